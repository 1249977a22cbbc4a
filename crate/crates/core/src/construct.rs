//! The pair of superconformal surfaces `φ± = g + 𝒥±h` built from a conjugate
//! minimal pair, the scaffold `(r, ∇r, a, Z, ξ, δ, Hess r, S, B_ξ)` behind it,
//! and the converse extraction of `(g, h)` from a superconformal surface.
//!
//! `𝒥±` acts on the tangent part of `h` through `J` and on the normal part as
//! a quarter turn of the oriented normal plane of `g`. With `X(a,b,c)` the
//! ternary cross product of R⁴ and `E = ‖g_u‖²`,
//!
//! ```text
//! φ± = g + (⟨h,g_v⟩ g_u − ⟨h,g_u⟩ g_v ∓ X(g_u, g_v, h)) / E
//! ```
//!
//! which is smooth even where `h` is tangent to `g`.

use crate::error::{Error, Result};
use crate::geometry::{self, adapted_frame, Ambient, FundamentalData};
use crate::jets::{cross4, Jet2, Jet2Vec4, SeededPair};
use crate::math::{self, Mat2, Vector};
use crate::minimal::MinimalPair;

/// `a` below this counts as small for flagging.
pub const A_SMALL: f64 = 0.05;
/// Below this `ξ` is taken from the normal frame of `g` instead of from `h^N`.
pub const A_FLOOR: f64 = 1e-6;
/// Smallest `r = ‖h‖` for which the scaffold is defined.
pub const R_FLOOR: f64 = 1e-10;
/// Circularity tolerance used for flags.
pub const CIRCULARITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

/// Quarter turn of the normal plane of `g`: `Ĵ(n) = X(g_u, g_v, n)/E`.
///
/// `Ĵ₊ = −Ĵ` and `Ĵ₋ = Ĵ`.
fn normal_rotation(gu: &Vector<4>, gv: &Vector<4>, e: f64, n: &Vector<4>) -> Vector<4> {
    math::scale(1.0 / e, &math::cross4(gu, gv, n))
}

/// The scaffold of the construction at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionFrame {
    pub g: Vector<4>,
    pub h: Vector<4>,
    pub g_u: Vector<4>,
    pub g_v: Vector<4>,
    /// Conformal factor `E = ‖g_u‖² = ‖g_v‖²` with its partials.
    pub e: Jet2,
    /// `r = ‖h‖` with its partials.
    pub r: Jet2,
    /// `∇r` in coordinates, `(r_u, r_v)/E`.
    pub grad_r_coords: [f64; 2],
    /// `g_*∇r`.
    pub grad_r: Vector<4>,
    pub grad_norm: f64,
    pub a: f64,
    /// `g_*Z` with `Z = −J∇r`.
    pub z: Vector<4>,
    /// `g_*T` with `T = rJ∇r`, the tangent part of `h`.
    pub tvec: Vector<4>,
    pub xi: Vector<4>,
    /// `δ = Ĵ ξ`.
    pub delta: Vector<4>,
    /// `Ĵ₊ξ = −δ`.
    pub delta_plus: Vector<4>,
    /// `Ĵ₋ξ = δ`.
    pub delta_minus: Vector<4>,
    /// Whether `ξ` came from `h^N` (`a` above the floor) or from the normal frame of `g`.
    pub xi_from_h: bool,
    /// Hessian of `r` in the metric of `g`, on the orthonormal basis `∂u/√E, ∂v/√E`.
    pub hess_r: Mat2,
    /// `I − ∇r⊗∇r` on the same basis.
    pub s: Mat2,
    /// `B_ξ(X, Y) = ⟨α_g(X, Y), ξ⟩` on the same basis.
    pub b_xi: Mat2,
    /// max-entry of `a r B_ξ − (r Hess r − S)·J`, when `ξ` comes from `h^N`.
    pub bxi_residual: Option<f64>,
    /// `‖h + r(g_*Z + aξ)‖ / r`, when `ξ` comes from `h^N`.
    pub decomposition_residual: Option<f64>,
}

impl ConstructionFrame {
    /// `φ± = g − r g_*∇r ± a r δ`.
    pub fn phi_closed_form(&self, sign: Sign) -> Vector<4> {
        let r = self.r.v;
        let mut out = math::axpy(&self.g, -r, &self.grad_r);
        out = math::axpy(&out, sign.factor() * self.a * r, &self.delta);
        out
    }

    /// `ζ = g_*Z + aξ = −h/r`.
    pub fn zeta(&self) -> Vector<4> {
        math::scale(-1.0 / self.r.v, &self.h)
    }
}

/// The scaffold at `(u, v)` from seeded jets.
pub fn construction_frame_from(sp: &SeededPair) -> Result<ConstructionFrame> {
    let g = sp.g.value();
    let h = sp.h.value();
    let gu = sp.g_u.value();
    let gv = sp.g_v.value();
    let gfd = geometry::fundamental_data(&sp.g, Ambient::Euclidean)?;

    let rr = sp.h.dot(&sp.h);
    let r_val = math::sqrt(rr.v);
    if !(r_val >= R_FLOOR) {
        return Err(Error::FrameDegenerate { r: r_val });
    }
    let r = rr.sqrt().map_err(|_| Error::FrameDegenerate { r: r_val })?;
    let e = sp.g_u.dot(&sp.g_u);
    let ev = e.v;
    let (ru, rv) = (r.du, r.dv);
    let (p, q) = (ru / ev, rv / ev);
    let grad_r: Vector<4> = core::array::from_fn(|i| p * gu[i] + q * gv[i]);
    let grad_sq = (ru * ru + rv * rv) / ev;
    let grad_norm = math::sqrt(grad_sq);
    let a = math::sqrt((1.0 - grad_sq).max(0.0));
    let z: Vector<4> = core::array::from_fn(|i| -q * gu[i] + p * gv[i]);
    let tvec: Vector<4> = core::array::from_fn(|i| r.v * (q * gu[i] - p * gv[i]));

    let ht = math::scale(1.0 / ev, &math::add(
        &math::scale(math::dot(&h, &gu), &gu),
        &math::scale(math::dot(&h, &gv), &gv),
    ));
    let hn = math::sub(&h, &ht);
    let hn_norm = math::norm(&hn);
    let xi_from_h = a > A_FLOOR && hn_norm > A_FLOOR * r.v;
    let xi = if xi_from_h {
        math::scale(-1.0 / hn_norm, &hn)
    } else {
        gfd.n1
    };
    let delta = normal_rotation(&gu, &gv, ev, &xi);

    // Hessian of r for the conformal metric E(du² + dv²).
    let (wu, wv) = (e.du / (2.0 * ev), e.dv / (2.0 * ev));
    let huu = r.duu - wu * ru + wv * rv;
    let huv = r.duv - wv * ru - wu * rv;
    let hvv = r.dvv + wu * ru - wv * rv;
    let hess_r = [[huu / ev, huv / ev], [huv / ev, hvv / ev]];
    let n = [ru / math::sqrt(ev), rv / math::sqrt(ev)];
    let s = [
        [1.0 - n[0] * n[0], -n[0] * n[1]],
        [-n[0] * n[1], 1.0 - n[1] * n[1]],
    ];
    let (guu, guv, gvv) = (sp.g.duu(), sp.g.duv(), sp.g.dvv());
    let b12 = math::dot(&guv, &xi) / ev;
    let b_xi = [
        [math::dot(&guu, &xi) / ev, b12],
        [b12, math::dot(&gvv, &xi) / ev],
    ];

    let (bxi_residual, decomposition_residual) = if xi_from_h {
        // J on the orthonormal basis: J e1 = −e2, J e2 = e1.
        let j = [[0.0, 1.0], [-1.0, 0.0]];
        let lhs = math::mat2_scale(a * r.v, &b_xi);
        let rhs = math::mat2_mul(&math::mat2_sub(&math::mat2_scale(r.v, &hess_r), &s), &j);
        let scale = 1.0
            + math::mat2_max_abs(&lhs)
                .max(math::mat2_max_abs(&math::mat2_scale(r.v, &hess_r)));
        let bxi = math::mat2_max_abs(&math::mat2_sub(&lhs, &rhs)) / scale;
        let zeta: Vector<4> = core::array::from_fn(|i| z[i] + a * xi[i]);
        let dec = math::norm(&math::axpy(&h, r.v, &zeta)) / r.v;
        (Some(bxi), Some(dec))
    } else {
        (None, None)
    };

    Ok(ConstructionFrame {
        g,
        h,
        g_u: gu,
        g_v: gv,
        e,
        r,
        grad_r_coords: [p, q],
        grad_r,
        grad_norm,
        a,
        z,
        tvec,
        xi,
        delta,
        delta_plus: math::scale(-1.0, &delta),
        delta_minus: delta,
        xi_from_h,
        hess_r,
        s,
        b_xi,
        bxi_residual,
        decomposition_residual,
    })
}

pub fn construction_frame(pair: &MinimalPair, u: f64, v: f64) -> Result<ConstructionFrame> {
    construction_frame_from(&pair.split(u, v)?)
}

/// Jets of `φ±` from seeded jets of the pair.
pub fn phi_jets(sp: &SeededPair, sign: Sign) -> Result<Jet2Vec4> {
    let e = sp.g_u.dot(&sp.g_u);
    let inv_e = e.recip()?;
    let hu = sp.h.dot(&sp.g_u);
    let hv = sp.h.dot(&sp.g_v);
    let x = cross4(&sp.g_u, &sp.g_v, &sp.h);
    let tangent = sp.g_u.scale_jet(&hv) - sp.g_v.scale_jet(&hu);
    let normal = x.scale(-sign.factor());
    Ok(sp.g + (tangent + normal).scale_jet(&inv_e))
}

/// Regularity flags of a `φ±` sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    /// `a < 0.05`: `h` is nearly tangent to `g` and `φ±` nearly umbilic.
    pub a_small: bool,
    /// The ellipse of `g` is a circle whose orientation matches this sign.
    pub g_holomorphic_point: bool,
    /// The first form of `φ±` is degenerate.
    pub rank_deficient: bool,
}

impl Flags {
    pub fn any(&self) -> bool {
        self.a_small || self.g_holomorphic_point || self.rank_deficient
    }

    /// Bitmask: 1 = a_small, 2 = g_holomorphic_point, 4 = rank_deficient.
    pub fn bits(&self) -> u8 {
        self.a_small as u8 | (self.g_holomorphic_point as u8) << 1 | (self.rank_deficient as u8) << 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiSample {
    pub sign: Sign,
    pub u: f64,
    pub v: f64,
    pub phi: Jet2Vec4,
    pub frame: ConstructionFrame,
    /// Fundamental data of `φ±`, absent where it is not an immersion.
    pub fd: Option<FundamentalData<4>>,
    pub flags: Flags,
}

/// Residual of `B_{Ĵβ} = −B_β∘J` for `g` on its first normal `β = n1`.
fn holomorphic_residual(gfd: &FundamentalData<4>, jhat_n1: &Vector<4>) -> f64 {
    let b = gfd.shape_operator(&gfd.n1);
    let bj = gfd.shape_operator(jhat_n1);
    let j = [[0.0, 1.0], [-1.0, 0.0]];
    let rhs = math::mat2_scale(-1.0, &math::mat2_mul(&b, &j));
    let scale = math::mat2_max_abs(&b).max(math::mat2_max_abs(&bj));
    if scale < 1e-12 {
        return 0.0;
    }
    math::mat2_max_abs(&math::mat2_sub(&bj, &rhs)) / scale
}

pub fn build_phi_from(sp: &SeededPair, sign: Sign, u: f64, v: f64) -> Result<PhiSample> {
    let frame = construction_frame_from(sp)?;
    let phi = phi_jets(sp, sign)?;
    let fd = match geometry::fundamental_data(&phi, Ambient::Euclidean) {
        Ok(fd) => Some(fd),
        Err(Error::SingularSample { .. }) => None,
        Err(e) => return Err(e),
    };
    let gfd = geometry::fundamental_data(&sp.g, Ambient::Euclidean)?;
    let circ = geometry::superconformality_test(&gfd, CIRCULARITY_TOL);
    let rot = normal_rotation(&frame.g_u, &frame.g_v, frame.e.v, &gfd.n1);
    let jhat = math::scale(-sign.factor(), &rot);
    let g_holomorphic_point =
        circ.is_superconformal && holomorphic_residual(&gfd, &jhat) < CIRCULARITY_TOL;
    let flags = Flags {
        a_small: frame.a < A_SMALL,
        g_holomorphic_point,
        rank_deficient: fd.is_none(),
    };
    Ok(PhiSample {
        sign,
        u,
        v,
        phi,
        frame,
        fd,
        flags,
    })
}

/// `φ±` at `(u, v)` with full jets, frame and flags.
pub fn build_phi(pair: &MinimalPair, sign: Sign, u: f64, v: f64) -> Result<PhiSample> {
    build_phi_from(&pair.split(u, v)?, sign, u, v)
}

pub fn regularity_flags(sample: &PhiSample) -> Flags {
    sample.flags
}

/// Dual-pair diagnostics at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualPairReport {
    /// `‖φ± + H±/‖H±‖² − g‖ · ‖H±‖`, indexed `[plus, minus]`.
    pub center_residual: [f64; 2],
    /// max over `∂u, ∂v` of `|I_g − (r²μ²/a²) I_φ| / E_g`.
    pub conformal_residual: [f64; 2],
    /// max-entry of `μ₊² I₊ − μ₋² I₋`, relative.
    pub metric_relation_residual: f64,
    /// max of `|⟨ζ, φ_u⟩|/‖φ_u‖`, `|⟨ζ, φ_v⟩|/‖φ_v‖`, `|⟨ζ, H⟩|/‖H‖` over both signs.
    pub tangency_residual: f64,
    pub mu: [f64; 2],
}

pub fn dual_pair_report(pair: &MinimalPair, u: f64, v: f64) -> Result<DualPairReport> {
    let sp = pair.split(u, v)?;
    let samples = [
        build_phi_from(&sp, Sign::Plus, u, v)?,
        build_phi_from(&sp, Sign::Minus, u, v)?,
    ];
    let mut rep = DualPairReport {
        center_residual: [0.0; 2],
        conformal_residual: [0.0; 2],
        metric_relation_residual: 0.0,
        tangency_residual: 0.0,
        mu: [0.0; 2],
    };
    let mut forms = [[0.0; 3]; 2];
    for (k, s) in samples.iter().enumerate() {
        let fd = s.fd.ok_or(Error::Precondition(alloc::format!(
            "phi_{} is not regular at ({u}, {v})",
            s.sign.as_str()
        )))?;
        if s.frame.a < A_FLOOR {
            return Err(Error::Precondition(alloc::format!(
                "a = {} vanishes at ({u}, {v})",
                s.frame.a
            )));
        }
        let h = fd.mean_curvature;
        let l2 = fd.lambda * fd.lambda;
        let center: Vector<4> = core::array::from_fn(|i| s.phi.0[i].v + h[i] / l2);
        rep.center_residual[k] = math::norm(&math::sub(&center, &s.frame.g)) * fd.lambda;

        let mu = geometry::ellipse_descriptor(&fd).mu;
        rep.mu[k] = mu;
        let r = s.frame.r.v;
        let factor = r * r * mu * mu / (s.frame.a * s.frame.a);
        let ig = [s.frame.e.v, math::dot(&s.frame.g_u, &s.frame.g_v), s.frame.e.v];
        let iphi = [fd.e, fd.f, fd.g];
        let mut c: f64 = 0.0;
        for j in 0..3 {
            c = c.max((ig[j] - factor * iphi[j]).abs() / s.frame.e.v);
        }
        rep.conformal_residual[k] = c;
        forms[k] = iphi.map(|x| mu * mu * x);

        let zeta = s.frame.zeta();
        let t = (math::dot(&zeta, &fd.xu).abs() / math::norm(&fd.xu))
            .max(math::dot(&zeta, &fd.xv).abs() / math::norm(&fd.xv))
            .max(math::dot(&zeta, &h).abs() / fd.lambda);
        rep.tangency_residual = rep.tangency_residual.max(t);
    }
    let scale = forms[0].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for j in 0..3 {
        rep.metric_relation_residual =
            rep.metric_relation_residual.max((forms[0][j] - forms[1][j]).abs() / scale);
    }
    Ok(rep)
}

/// `|‖φ^{h+w} − φ^h‖ − ‖w‖|` at `(u, v)` for both signs.
pub fn translation_residual(pair: &MinimalPair, w: &Vector<4>, u: f64, v: f64) -> Result<f64> {
    let shifted = pair.clone().with_offset(math::add(&pair.offset, w));
    let (a, b) = (pair.split(u, v)?, shifted.split(u, v)?);
    let mut worst: f64 = 0.0;
    for sign in Sign::BOTH {
        let d = math::sub(&phi_jets(&b, sign)?.value(), &phi_jets(&a, sign)?.value());
        worst = worst.max((math::norm(&d) - math::norm(w)).abs());
    }
    Ok(worst)
}

/// `(g, h)` recovered from a superconformal sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractedPair {
    /// `g = φ + η/‖H‖`.
    pub g: Vector<4>,
    /// `h = −ζ/‖H‖` with the positively oriented `ζ` of the adapted frame.
    pub h: Vector<4>,
    pub frame_residual: f64,
}

pub fn extract_minimal_pair(surface: &Jet2Vec4) -> Result<ExtractedPair> {
    let fd = geometry::fundamental_data(surface, Ambient::Euclidean)?;
    let frame = adapted_frame(&fd)?;
    let inv = 1.0 / frame.lambda;
    Ok(ExtractedPair {
        g: math::axpy(&fd.position, inv, &frame.eta),
        h: math::scale(-inv, &frame.zeta),
        frame_residual: frame.pattern_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_curve;
    use crate::grid::{Domain, Rect};
    use crate::minimal::HolomorphicCurve;

    fn catenoid() -> MinimalPair {
        MinimalPair::new(HolomorphicCurve::new(
            parse_curve("(cos(z), sin(z), -i*z, 0)").unwrap(),
            Domain::rect(Rect::new(-7.0, 7.0, -2.0, 2.0).unwrap()),
        ))
    }

    fn closed_form(u: f64, v: f64, s: f64) -> Vector<4> {
        let ch = math::cosh(v);
        [
            (math::cos(u) + u * math::sin(u)) / ch,
            (math::sin(u) - u * math::cos(u)) / ch,
            (v * ch - math::sinh(v)) / ch,
            s * u * math::sinh(v) / ch,
        ]
    }

    #[test]
    fn catenoid_values() {
        let p = catenoid();
        for sign in Sign::BOTH {
            let s = build_phi(&p, sign, 0.3, 0.0);
            // h vanishes only at the origin
            assert!(s.is_ok());
        }
        assert!(matches!(
            build_phi(&p, Sign::Plus, 0.0, 0.0),
            Err(Error::FrameDegenerate { .. })
        ));
        let s = build_phi(&p, Sign::Plus, 0.0, 1.0).unwrap();
        let want = closed_form(0.0, 1.0, 1.0);
        assert!(math::norm(&math::sub(&s.phi.value(), &want)) < 1e-12);
        assert!((want[0] - 0.648054).abs() < 1e-6 && (want[2] - 0.238406).abs() < 1e-6);
        for sign in Sign::BOTH {
            let s = build_phi(&p, sign, core::f64::consts::FRAC_PI_2, 1e-9).unwrap();
            let want = [core::f64::consts::FRAC_PI_2, 1.0, 0.0, 0.0];
            assert!(math::norm(&math::sub(&s.phi.value(), &want)) < 1e-8);
        }
    }

    #[test]
    fn closed_form_up_to_label_swap() {
        let p = catenoid();
        let mut best = [0.0f64; 2];
        for &(u, v) in &[(1.0, 0.5), (2.0, -1.2), (4.0, 0.7)] {
            for (k, s) in [1.0, -1.0].into_iter().enumerate() {
                let got = build_phi(&p, Sign::Plus, u, v).unwrap().phi.value();
                best[k] = best[k].max(math::norm(&math::sub(&got, &closed_form(u, v, s))));
            }
        }
        assert!(best[0].min(best[1]) < 1e-12, "{best:?}");
    }

    #[test]
    fn frame_at_catenoid_points() {
        let p = catenoid();
        let f = construction_frame(&p, 1.0, 1.0).unwrap();
        let want = math::sqrt(math::sinh(1.0) * math::sinh(1.0) + 1.0);
        assert!((f.r.v - want).abs() < 1e-12);
        assert!((want - 1.5430806).abs() < 1e-7);
        assert!(f.grad_norm <= 1.0 + 1e-10);
        assert!(f.decomposition_residual.unwrap() < 1e-9);
        assert!(f.bxi_residual.unwrap() < 1e-7, "{:?}", f.bxi_residual);
        let f0 = construction_frame(&p, 0.0, 1.0).unwrap();
        assert!((f0.grad_norm - 1.0).abs() < 1e-12 && f0.a < 1e-6);
        assert!(!f0.xi_from_h);
    }

    #[test]
    fn two_routes_agree() {
        let p = catenoid();
        for &(u, v) in &[(1.0, 0.5), (2.5, -0.9), (5.0, 1.3)] {
            for sign in Sign::BOTH {
                let s = build_phi(&p, sign, u, v).unwrap();
                assert!(s.frame.a > A_SMALL);
                let d = math::sub(&s.phi.value(), &s.frame.phi_closed_form(sign));
                assert!(math::norm(&d) < 1e-10);
            }
        }
    }

    #[test]
    fn flags_and_superconformality() {
        let p = catenoid();
        let s = build_phi(&p, Sign::Plus, 1.0, 0.5).unwrap();
        assert!(!s.flags.any());
        let fd = s.fd.unwrap();
        let rep = geometry::superconformality_test(&fd, 1e-8);
        assert!(rep.is_superconformal, "{rep:?}");
        assert!(rep.relative_defect(fd.lambda) < 1e-8);
        let frame = adapted_frame(&fd).unwrap();
        assert!(frame.pattern_residual < 1e-7);
        assert!((frame.kn - 2.0 * frame.mu * frame.mu).abs() < 1e-8 * frame.kn.abs());
        assert!(build_phi(&p, Sign::Plus, 0.0, 0.5).unwrap().flags.a_small);
    }

    #[test]
    fn dual_pair_and_translation() {
        let p = catenoid();
        let rep = dual_pair_report(&p, 1.0, 0.5).unwrap();
        assert!(rep.center_residual.iter().all(|&x| x < 1e-7), "{rep:?}");
        assert!(rep.conformal_residual.iter().all(|&x| x < 1e-7), "{rep:?}");
        assert!(rep.metric_relation_residual < 1e-7, "{rep:?}");
        assert!(rep.tangency_residual < 1e-7, "{rep:?}");
        let t = translation_residual(&p, &[0.3, -1.0, 2.0, 0.5], 1.0, 0.5).unwrap();
        assert!(t < 1e-9);
    }

    #[test]
    fn extraction_round_trip() {
        let p = catenoid();
        let s = build_phi(&p, Sign::Plus, 1.0, 0.5).unwrap();
        let ex = extract_minimal_pair(&s.phi).unwrap();
        assert!(math::norm(&math::sub(&ex.g, &s.frame.g)) < 1e-8);
        let dh = math::norm(&math::sub(&ex.h, &s.frame.h))
            .min(math::norm(&math::add(&ex.h, &s.frame.h)));
        assert!(dh < 1e-8);
        let constant = Jet2Vec4::constant(&[1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(
            extract_minimal_pair(&constant),
            Err(Error::SingularSample { .. })
        ));
    }
}
