//! Transforms of minimal pairs: the pair of an inverted superconformal surface,
//! duality of holomorphic curves in C² and the pair of an inverted holomorphic
//! curve.

use alloc::format;
use num_complex::Complex64;

use super::{holomorphic_inversion, Inversion};
use crate::construct::{build_phi, extract_minimal_pair, Sign};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::jets::{Jet2Vec4, JetVec};
use crate::math::{self, Vector};
use crate::minimal::{bilinear, hermitian_norm_sq, HolomorphicCurve, MinimalPair};

/// `G(z) = g + i h` including the pair's offset.
pub fn pair_value(pair: &MinimalPair, u: f64, v: f64) -> Result<[Complex64; 4]> {
    let g = pair.curve.value(Complex64::new(u, v))?;
    Ok(core::array::from_fn(|k| g[k] + Complex64::new(0.0, pair.offset[k])))
}

/// Largest `|⟨⟨G,G⟩⟩| / ‖G‖²` over the grid, skipping points where `G = 0`.
pub fn relative_quadric_max(pair: &MinimalPair, grid: &Grid) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (u, v) in grid.points() {
        let g = pair_value(pair, u, v)?;
        let n = hermitian_norm_sq(&g);
        if n > 0.0 {
            worst = worst.max(bilinear(&g, &g).norm() / n);
        }
    }
    Ok(worst)
}

/// Tolerance on `|⟨⟨G,G⟩⟩| / ‖G‖²` below which a curve counts as lying in Q₀.
pub const Q0_TOL: f64 = 1e-9;

/// The pair `P0 + T_R(G − P0)` of the surface inverted about `P0`.
///
/// Its real part is `g̃` and its imaginary part is `−h̃` in the conjugated
/// convention `g̃ − P0 − ih̃ = T_R(g − P0 + ih)`.
pub fn transformed_pair(pair: &MinimalPair, center: &Vector<4>, radius: f64) -> MinimalPair {
    let shift: [Complex64; 4] =
        core::array::from_fn(|k| Complex64::new(-center[k], pair.offset[k]));
    let back: [Complex64; 4] = core::array::from_fn(|k| Complex64::new(center[k], 0.0));
    let expr = pair
        .curve
        .expr
        .shifted(shift)
        .holomorphic_inversion(radius)
        .shifted(back);
    let mut curve = HolomorphicCurve::new(expr, pair.curve.domain.clone());
    if let Some(name) = &pair.curve.name {
        curve = curve.named(&format!("T({name})"));
    }
    MinimalPair::new(curve)
}

/// How the extracted pair of the inverted surface relates to `T_R(G − P0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `g̃ − P0 − ih̃ = T_R(G − P0)`.
    Conjugated,
    /// `g̃ − P0 + ih̃ = T_R(G − P0)`.
    Direct,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Conjugated => "conjugated",
            Convention::Direct => "direct",
        }
    }
}

/// Sup-distances between the two routes to the inverted pair.
///
/// Distances are measured relative to `1 + ‖T_R(G − P0)‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairTransformReport {
    pub g_error: f64,
    /// `h` error under [`Convention::Conjugated`].
    pub h_error_conjugated: f64,
    /// `h` error under [`Convention::Direct`].
    pub h_error_direct: f64,
    pub samples: usize,
    /// Flagged or singular samples that were left out.
    pub skipped: usize,
}

impl PairTransformReport {
    pub fn matched(&self) -> Convention {
        if self.h_error_conjugated <= self.h_error_direct {
            Convention::Conjugated
        } else {
            Convention::Direct
        }
    }

    /// Sup error under the better convention.
    pub fn best_error(&self) -> f64 {
        self.g_error
            .max(self.h_error_conjugated.min(self.h_error_direct))
    }
}

/// `(g, h)` from the inverted surface, `(g, h)` from `T`, and the error scale.
type Routes = (Vector<4>, Vector<4>, Vector<4>, Vector<4>, f64);

/// Compares the pair extracted from `I∘φ` with the holomorphic inversion of
/// `G − P0` over the grid.
pub fn pair_transform_check(
    pair: &MinimalPair,
    inv: &Inversion<4>,
    sign: Sign,
    grid: &Grid,
) -> Result<PairTransformReport> {
    if inv.signature != math::Signature::Euclidean {
        return Err(Error::Precondition(
            "pair transform needs a Euclidean inversion of R4".into(),
        ));
    }
    let q = relative_quadric_max(pair, grid)?;
    if q < Q0_TOL {
        return Err(Error::Precondition(format!(
            "curve lies in the null quadric (max |<<G,G>>|/|G|^2 = {q:e}); \
             the surface is an inverted holomorphic curve"
        )));
    }
    let p0 = inv.center;
    let mut report = PairTransformReport {
        g_error: 0.0,
        h_error_conjugated: 0.0,
        h_error_direct: 0.0,
        samples: 0,
        skipped: 0,
    };
    for (u, v) in grid.points() {
        let routes = (|| -> Result<Option<Routes>> {
            let sample = build_phi(pair, sign, u, v)?;
            if sample.flags.any() {
                return Ok(None);
            }
            let extracted = extract_minimal_pair(&inv.apply_jets(&sample.phi)?)?;
            let g = pair_value(pair, u, v)?;
            let z: [Complex64; 4] = core::array::from_fn(|k| g[k] - p0[k]);
            let t = holomorphic_inversion(&z, inv.radius)?;
            let g_b: Vector<4> = core::array::from_fn(|k| p0[k] + t[k].re);
            let h_b: Vector<4> = core::array::from_fn(|k| -t[k].im);
            let scale = 1.0 + math::sqrt(hermitian_norm_sq(&t));
            Ok(Some((extracted.g, extracted.h, g_b, h_b, scale)))
        })();
        match routes {
            Ok(Some((g_a, h_a, g_b, h_b, scale))) => {
                report.samples += 1;
                let dg = math::norm(&math::sub(&g_a, &g_b)) / scale;
                let dc = math::norm(&math::sub(&h_a, &h_b)) / scale;
                let dd = math::norm(&math::add(&h_a, &h_b)) / scale;
                report.g_error = report.g_error.max(dg);
                report.h_error_conjugated = report.h_error_conjugated.max(dc);
                report.h_error_direct = report.h_error_direct.max(dd);
            }
            Ok(None) => report.skipped += 1,
            Err(e) if e.is_precondition() => return Err(e),
            Err(_) => report.skipped += 1,
        }
    }
    if report.samples == 0 {
        return Err(Error::Precondition(
            "no regular sample on the grid for the pair transform".into(),
        ));
    }
    Ok(report)
}

/// `(Re f₁, Im f₁, Re f₂, Im f₂)` and its partials for a curve in C².
struct C2Jets {
    f: Jet2Vec4,
    f_u: Jet2Vec4,
    f_v: Jet2Vec4,
}

fn c2_jets(curve: &HolomorphicCurve, u: f64, v: f64) -> Result<C2Jets> {
    let [c2, c3] = [&curve.expr.components[2], &curve.expr.components[3]];
    if !(c2.is_zero() && c3.is_zero()) {
        return Err(Error::Precondition(
            "expected a curve in C2 (last two components zero)".into(),
        ));
    }
    let j = curve.holo_eval(Complex64::new(u, v))?;
    let d = [j[0].derivative(), j[1].derivative()];
    Ok(C2Jets {
        f: JetVec([
            j[0].re_jet2(),
            j[0].im_jet2(),
            j[1].re_jet2(),
            j[1].im_jet2(),
        ]),
        f_u: JetVec([
            d[0].re_jet2(),
            d[0].im_jet2(),
            d[1].re_jet2(),
            d[1].im_jet2(),
        ]),
        f_v: JetVec([
            -d[0].im_jet2(),
            d[0].re_jet2(),
            -d[1].im_jet2(),
            d[1].re_jet2(),
        ]),
    })
}

/// Multiplication by `i` on C² = R⁴.
pub fn complex_structure_c2(x: &Vector<4>) -> Vector<4> {
    [-x[1], x[0], -x[3], x[2]]
}

/// Component of `x` normal to `span{tu, tv}`.
fn normal_component(x: &Vector<4>, tu: &Vector<4>, tv: &Vector<4>) -> Vector<4> {
    let (e, f, g) = (math::dot(tu, tu), math::dot(tu, tv), math::dot(tv, tv));
    let (a, b) = (math::dot(x, tu), math::dot(x, tv));
    let det = e * g - f * f;
    let c1 = (g * a - f * b) / det;
    let c2 = (e * b - f * a) / det;
    core::array::from_fn(|i| x[i] - c1 * tu[i] - c2 * tv[i])
}

/// Jets of the normal component of `d` along a surface with tangent jets `tu`, `tv`.
fn normal_component_jets(d: &Jet2Vec4, tu: &Jet2Vec4, tv: &Jet2Vec4) -> Result<Jet2Vec4> {
    let (e, f, g) = (tu.dot(tu), tu.dot(tv), tv.dot(tv));
    let (a, b) = (d.dot(tu), d.dot(tv));
    let det = e * g - f * f;
    let inv = det.recip()?;
    let c1 = (g * a - f * b) * inv;
    let c2 = (e * b - f * a) * inv;
    Ok(*d - tu.scale_jet(&c1) - tv.scale_jet(&c2))
}

/// Relative floor on `‖f^N‖` for the duality map.
pub const DUALITY_FLOOR: f64 = 1e-10;

/// Duality data at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualitySample {
    /// `f(z)` as a point of R⁴.
    pub f: Vector<4>,
    /// `f* = f^N / (2‖f^N‖²)` with jets.
    pub fstar: Jet2Vec4,
    /// `‖f*_v + J f*_u‖ / ‖f*_u‖`: vanishes when `f*` is anti-holomorphic in `z`.
    pub anti_holomorphic: f64,
    /// `‖(f*)* − f‖`.
    pub involution: f64,
    /// `max(|E−G|, 2|F|)/(E+G)` for the metric induced by `f*`.
    pub conformality: f64,
}

/// `f*(z)` for a holomorphic curve `f` in C², with its checks.
pub fn duality(curve: &HolomorphicCurve, u: f64, v: f64) -> Result<DualitySample> {
    let c = c2_jets(curve, u, v)?;
    let fnormal = normal_component_jets(&c.f, &c.f_u, &c.f_v)?;
    let nn = fnormal.dot(&fnormal);
    let norm = math::sqrt(nn.v);
    if !(norm > DUALITY_FLOOR * (1.0 + math::norm(&c.f.value()))) {
        return Err(Error::DualitySingular { norm });
    }
    let fstar = fnormal.scale_jet(&(nn * 2.0).recip()?);

    let (su, sv) = (fstar.du(), fstar.dv());
    let w = math::add(&sv, &complex_structure_c2(&su));
    let anti_holomorphic = math::norm(&w) / math::norm(&su).max(1e-300);

    let back_normal = normal_component(&fstar.value(), &su, &sv);
    let bn = math::dot(&back_normal, &back_normal);
    let back = math::scale(1.0 / (2.0 * bn), &back_normal);
    let f = c.f.value();

    let (e, ff, g) = (math::dot(&su, &su), math::dot(&su, &sv), math::dot(&sv, &sv));
    Ok(DualitySample {
        f,
        fstar,
        anti_holomorphic,
        involution: math::norm(&math::sub(&back, &f)),
        conformality: (e - g).abs().max(2.0 * ff.abs()) / (e + g),
    })
}

/// The conjugate minimal pair of `I∘f` for a holomorphic curve `f` in C².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvertedCurvePair {
    /// `g̃ = P0 + R² d^N / (2‖d^N‖²)` with `d = f − P0`.
    pub g: Vector<4>,
    /// `h̃ = R² J d^N / (2‖d^N‖²)`.
    pub h: Vector<4>,
}

pub fn inversion_pair_of_holomorphic(
    curve: &HolomorphicCurve,
    inv: &Inversion<4>,
    u: f64,
    v: f64,
) -> Result<InvertedCurvePair> {
    let c = c2_jets(curve, u, v)?;
    let d = math::sub(&c.f.value(), &inv.center);
    let dn = normal_component(&d, &c.f_u.value(), &c.f_v.value());
    let n2 = math::dot(&dn, &dn);
    if !(math::sqrt(n2) > DUALITY_FLOOR * (1.0 + math::norm(&d))) {
        return Err(Error::DualitySingular {
            norm: math::sqrt(n2),
        });
    }
    let k = inv.radius * inv.radius / (2.0 * n2);
    Ok(InvertedCurvePair {
        g: math::axpy(&inv.center, k, &dn),
        h: math::scale(k, &complex_structure_c2(&dn)),
    })
}

/// `I∘f` with jets, for a holomorphic curve `f` in C².
pub fn inverted_curve(curve: &HolomorphicCurve, inv: &Inversion<4>, u: f64, v: f64) -> Result<Jet2Vec4> {
    inv.apply_jets(&c2_jets(curve, u, v)?.f)
}

/// Agreement of [`inversion_pair_of_holomorphic`] with the pair extracted from
/// the superconformal surface `I∘f`, accepting either sign of `h̃`.
pub fn inversion_pair_crosscheck(
    curve: &HolomorphicCurve,
    inv: &Inversion<4>,
    u: f64,
    v: f64,
) -> Result<f64> {
    let closed = inversion_pair_of_holomorphic(curve, inv, u, v)?;
    let extracted = extract_minimal_pair(&inverted_curve(curve, inv, u, v)?)?;
    let dg = math::norm(&math::sub(&closed.g, &extracted.g));
    let dh = math::norm(&math::sub(&closed.h, &extracted.h))
        .min(math::norm(&math::add(&closed.h, &extracted.h)));
    Ok(dg.max(dh))
}
