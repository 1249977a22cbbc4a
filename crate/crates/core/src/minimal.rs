//! Holomorphic curves `G: Ω → C⁴` and the conjugate minimal pairs
//! `(g, h) = (Re G, Im G)` they define.
//!
//! The parameter is `z = u + iv` and the complex structure of the parameter
//! domain is `J∂u = −∂v`, `J∂v = ∂u`, so that `h_* = g_*∘J`.

use alloc::string::String;

use num_complex::Complex64;

use crate::construct::{self, Sign};
use crate::error::{Error, Result};
use crate::expr::CurveExpr;
use crate::geometry::{self, Ambient};
use crate::grid::{Domain, Grid};
use crate::jets::{seed_pair, ComplexJet, SeededPair};
use crate::math::{self, Vector};

/// Isotropy tolerance `|⟨⟨G′,G′⟩⟩| / ‖G′‖²` for certification.
pub const ISOTROPY_TOL: f64 = 1e-9;
/// Smallest accepted Hermitian norm `‖G′‖`.
pub const REGULARITY_FLOOR: f64 = 1e-10;
/// Minimality tolerance `‖H_g‖ / curvature scale`.
pub const MINIMALITY_TOL: f64 = 1e-9;
/// Curvature scales below this are treated as flat when normalizing `‖H_g‖`.
pub const CURVATURE_SCALE_FLOOR: f64 = 1e-12;

/// A holomorphic curve given by an expression, with its parameter domain.
#[derive(Debug, Clone, PartialEq)]
pub struct HolomorphicCurve {
    pub expr: CurveExpr,
    pub domain: Domain,
    pub name: Option<String>,
}

impl HolomorphicCurve {
    pub fn new(expr: CurveExpr, domain: Domain) -> Self {
        HolomorphicCurve {
            expr,
            domain,
            name: None,
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Jets of the four components at `z`.
    pub fn holo_eval(&self, z: Complex64) -> Result<[ComplexJet; 4]> {
        if !self.domain.contains(z.re, z.im) {
            return Err(Error::Domain { u: z.re, v: z.im });
        }
        self.expr.eval(z)
    }

    /// `G(z)`.
    pub fn value(&self, z: Complex64) -> Result<[Complex64; 4]> {
        Ok(self.holo_eval(z)?.map(|j| j.value()))
    }
}

/// `⟨⟨Z, W⟩⟩ = Σ Z_k W_k`, the complex bilinear product.
pub fn bilinear(z: &[Complex64; 4], w: &[Complex64; 4]) -> Complex64 {
    (0..4).fold(Complex64::new(0.0, 0.0), |s, k| s + z[k] * w[k])
}

/// `Σ |Z_k|²`.
pub fn hermitian_norm_sq(z: &[Complex64; 4]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum()
}

/// A conjugate minimal pair `g = Re G`, `h = Im G + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalPair {
    pub curve: HolomorphicCurve,
    pub offset: Vector<4>,
}

impl MinimalPair {
    pub fn new(curve: HolomorphicCurve) -> Self {
        MinimalPair {
            curve,
            offset: [0.0; 4],
        }
    }

    pub fn with_offset(mut self, offset: Vector<4>) -> Self {
        self.offset = offset;
        self
    }

    /// Jets of `g`, `h`, `g_u`, `g_v` at `(u, v)`.
    pub fn split(&self, u: f64, v: f64) -> Result<SeededPair> {
        let jets = self.curve.holo_eval(Complex64::new(u, v))?;
        let mut sp = seed_pair(&jets);
        sp.h = sp.h.translate(&self.offset);
        Ok(sp)
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.curve.domain.contains(u, v)
    }
}

/// Rotates the pair inside its associated family:
/// `g_θ = cosθ g + sinθ h`, `h_θ = −sinθ g + cosθ h`.
///
/// The curve expression is multiplied by `e^{−iθ}`; the offset is kept.
pub fn associated_family(pair: &MinimalPair, theta: f64) -> MinimalPair {
    if theta == 0.0 {
        return pair.clone();
    }
    let c = Complex64::new(math::cos(theta), -math::sin(theta));
    let mut curve = pair.curve.clone();
    curve.expr = curve.expr.scaled(c);
    MinimalPair {
        curve,
        offset: pair.offset,
    }
}

/// Grid statistics certifying that a curve defines a conjugate minimal pair.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Certificate {
    /// max `|⟨⟨G′,G′⟩⟩| / ‖G′‖²`.
    pub isotropy_max: f64,
    /// min `‖G′‖`.
    pub regularity_min: f64,
    /// max `‖H_g‖ / max ‖α_ij‖` over regular samples.
    pub minimality_max: f64,
    /// max of `|h_u + g_v|`, `|h_v − g_u|`; zero by construction.
    pub conjugacy_max: f64,
    /// max of the differences between the metrics induced by `g` and `h`.
    pub metric_mismatch_max: f64,
    /// Samples where `g` is not an immersion.
    pub singular_points: usize,
    pub samples: usize,
}

impl Certificate {
    pub fn passes(&self) -> bool {
        self.isotropy_max < ISOTROPY_TOL
            && self.regularity_min > REGULARITY_FLOOR
            && self.minimality_max < MINIMALITY_TOL
            && self.conjugacy_max == 0.0
            && self.singular_points == 0
    }
}

/// Certificate data at a single point.
pub fn certify_point(curve: &HolomorphicCurve, u: f64, v: f64) -> Result<Certificate> {
    let jets = curve.holo_eval(Complex64::new(u, v))?;
    let d: [Complex64; 4] = jets.map(|j| j.coeffs[1]);
    let n2 = hermitian_norm_sq(&d);
    let mut cert = Certificate {
        isotropy_max: if n2 > 0.0 {
            bilinear(&d, &d).norm() / n2
        } else {
            f64::INFINITY
        },
        regularity_min: math::sqrt(n2),
        samples: 1,
        ..Certificate::default()
    };
    let sp = seed_pair(&jets);
    for k in 0..4 {
        let (g, h) = (sp.g.0[k], sp.h.0[k]);
        cert.conjugacy_max = cert
            .conjugacy_max
            .max((h.du + g.dv).abs())
            .max((h.dv - g.du).abs());
    }
    let metric = |x: &crate::jets::Jet2Vec4| {
        let (a, b) = (x.du(), x.dv());
        [math::dot(&a, &a), math::dot(&a, &b), math::dot(&b, &b)]
    };
    let (mg, mh) = (metric(&sp.g), metric(&sp.h));
    let scale = mg[0].max(mg[2]).max(1e-300);
    for k in 0..3 {
        cert.metric_mismatch_max = cert.metric_mismatch_max.max((mg[k] - mh[k]).abs() / scale);
    }
    match geometry::fundamental_data(&sp.g, Ambient::Euclidean) {
        Ok(fd) => {
            let curv = math::norm(&fd.alpha11)
                .max(math::norm(&fd.alpha12))
                .max(math::norm(&fd.alpha22))
                .max(CURVATURE_SCALE_FLOOR);
            cert.minimality_max = fd.lambda / curv;
        }
        Err(Error::SingularSample { .. }) => cert.singular_points = 1,
        Err(e) => return Err(e),
    }
    Ok(cert)
}

impl Certificate {
    pub fn merge(self, o: Certificate) -> Certificate {
        if self.samples == 0 {
            return o;
        }
        if o.samples == 0 {
            return self;
        }
        Certificate {
            isotropy_max: self.isotropy_max.max(o.isotropy_max),
            regularity_min: self.regularity_min.min(o.regularity_min),
            minimality_max: self.minimality_max.max(o.minimality_max),
            conjugacy_max: self.conjugacy_max.max(o.conjugacy_max),
            metric_mismatch_max: self.metric_mismatch_max.max(o.metric_mismatch_max),
            singular_points: self.singular_points + o.singular_points,
            samples: self.samples + o.samples,
        }
    }
}

/// Certifies `curve` over `grid`. Non-isotropic curves yield a failing
/// certificate rather than an error; poles on the grid are errors.
pub fn certify(curve: &HolomorphicCurve, grid: &Grid) -> Result<Certificate> {
    let mut cert = Certificate::default();
    for (u, v) in grid.points() {
        cert = cert.merge(certify_point(curve, u, v)?);
    }
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionReport {
    /// max `‖reflect₄(φ₊) − φ₋‖`.
    pub max_residual: f64,
    pub samples: usize,
    /// Grid points where `φ±` could not be built (e.g. `h = 0`).
    pub skipped: usize,
}

/// Checks that `φ₊` and `φ₋` differ by the reflection `x₄ ↦ −x₄` when `g`
/// lies in R³.
pub fn reflection_pair_check(pair: &MinimalPair, grid: &Grid) -> Result<ReflectionReport> {
    let mut rep = ReflectionReport {
        max_residual: 0.0,
        samples: 0,
        skipped: 0,
    };
    for (u, v) in grid.points() {
        let sp = pair.split(u, v)?;
        let g4 = sp.g.0[3];
        let scale = 1.0 + math::max_abs(&sp.g.value());
        if g4.v.abs().max(g4.du.abs()).max(g4.dv.abs()) > 1e-12 * scale {
            return Err(Error::Precondition(alloc::format!(
                "g is not contained in R^3: x4 = {} at ({u}, {v})",
                g4.v
            )));
        }
        let (p, m) = match (
            construct::build_phi(pair, Sign::Plus, u, v),
            construct::build_phi(pair, Sign::Minus, u, v),
        ) {
            (Ok(p), Ok(m)) => (p, m),
            _ => {
                rep.skipped += 1;
                continue;
            }
        };
        let mut refl = p.phi.value();
        refl[3] = -refl[3];
        let d = math::norm(&math::sub(&refl, &m.phi.value()));
        rep.max_residual = rep.max_residual.max(d);
        rep.samples += 1;
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_curve;
    use crate::grid::Rect;

    fn curve(text: &str, rect: Rect) -> HolomorphicCurve {
        HolomorphicCurve::new(parse_curve(text).unwrap(), Domain::rect(rect))
    }

    fn catenoid() -> MinimalPair {
        MinimalPair::new(curve(
            "(cos(z), sin(z), -i*z, 0)",
            Rect::new(-7.0, 7.0, -2.0, 2.0).unwrap(),
        ))
    }

    #[test]
    fn catenoid_split_matches_closed_form() {
        let p = catenoid();
        for &(u, v) in &[(0.3, -0.7), (1.1, 0.4), (0.0, 0.0)] {
            let sp = p.split(u, v).unwrap();
            let g = [
                math::cosh(v) * math::cos(u),
                math::cosh(v) * math::sin(u),
                v,
                0.0,
            ];
            let h = [
                -math::sinh(v) * math::sin(u),
                math::sinh(v) * math::cos(u),
                -u,
                0.0,
            ];
            for k in 0..4 {
                assert!((sp.g.0[k].v - g[k]).abs() < 1e-14);
                assert!((sp.h.0[k].v - h[k]).abs() < 1e-14);
            }
        }
        let shifted = catenoid().with_offset([0.0, 0.0, 0.0, 5.0]);
        assert_eq!(shifted.split(0.0, 0.0).unwrap().h.value(), [0.0, 0.0, 0.0, 5.0]);
    }

    #[test]
    fn certificates() {
        let rect = Rect::new(0.2, 2.0, -1.0, 1.0).unwrap();
        let grid = Grid::new(rect, 8, 8).unwrap();
        let cert = certify(&catenoid().curve, &grid).unwrap();
        assert!(cert.isotropy_max < 1e-12 && cert.passes(), "{cert:?}");
        let flat = curve("(z, 0, 0, 0)", rect);
        let cert = certify(&flat, &grid).unwrap();
        assert!((cert.isotropy_max - 1.0).abs() < 1e-15);
        assert!(!cert.passes());
        let pole = curve("(1/z, i/z, 0, 0)", Rect::new(-1.0, 1.0, -1.0, 1.0).unwrap());
        let g = Grid::new(pole.domain.rect, 3, 3).unwrap();
        assert!(matches!(certify(&pole, &g), Err(Error::Evaluation { .. })));
    }

    #[test]
    fn associated_family_rotation() {
        let p = catenoid();
        let q = associated_family(&p, core::f64::consts::FRAC_PI_2);
        let (a, b) = (p.split(0.4, 0.3).unwrap(), q.split(0.4, 0.3).unwrap());
        for k in 0..4 {
            assert!((b.g.0[k].v - a.h.0[k].v).abs() < 1e-15);
            assert!((b.h.0[k].v + a.g.0[k].v).abs() < 1e-15);
        }
        assert_eq!(associated_family(&p, 0.0), p);
        let grid = Grid::new(Rect::new(0.2, 2.0, -1.0, 1.0).unwrap(), 6, 6).unwrap();
        let cert = certify(&associated_family(&p, core::f64::consts::FRAC_PI_4).curve, &grid).unwrap();
        assert_eq!(cert.conjugacy_max, 0.0);
        assert!(cert.minimality_max < 1e-9);
    }

    #[test]
    fn metrics_of_conjugates_agree() {
        let grid = Grid::new(Rect::new(0.2, 2.0, -1.0, 1.0).unwrap(), 5, 5).unwrap();
        let cert = certify(&catenoid().curve, &grid).unwrap();
        assert!(cert.metric_mismatch_max < 1e-12);
    }
}
