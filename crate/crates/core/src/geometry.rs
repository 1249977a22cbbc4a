//! Second-order geometry of a surface sample: fundamental forms, curvatures,
//! the ellipse of curvature and the adapted frame of a superconformal point.
//!
//! Surfaces live either in R⁴ (`N = 4`) or in a 4-dimensional space form
//! sitting in R⁵ or Lorentzian L⁵ (`N = 5`). All second-form vectors are
//! expressed on the orthonormal tangent basis `Ŷ1 = X_u/‖X_u‖`, `Ŷ2` from
//! Gram–Schmidt on `X_v`.

use crate::error::{Error, Result};
use crate::jets::JetVec;
use crate::math::{self, Mat2, Signature, Vector};

/// Relative floor on the first-form determinant.
pub const REGULARITY_FLOOR: f64 = 1e-12;

/// Where the surface lives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ambient {
    /// R⁴ with the Euclidean metric.
    Euclidean,
    /// `S⁴(C; R)` in R⁵.
    Sphere { center: Vector<5>, radius: f64 },
    /// `H⁴(C; R) = {X : ⟨X−C, X−C⟩ = −R², x₅ > c₅}` in L⁵.
    Hyperbolic { center: Vector<5>, radius: f64 },
}

impl Ambient {
    /// `S⁴(R e₅; R)`.
    pub fn sphere(radius: f64) -> Self {
        Ambient::Sphere {
            center: [0.0, 0.0, 0.0, 0.0, radius],
            radius,
        }
    }

    /// `H⁴(−R e₅; R)`.
    pub fn hyperbolic(radius: f64) -> Self {
        Ambient::Hyperbolic {
            center: [0.0, 0.0, 0.0, 0.0, -radius],
            radius,
        }
    }

    pub fn signature(&self) -> Signature {
        match self {
            Ambient::Hyperbolic { .. } => Signature::Lorentzian,
            _ => Signature::Euclidean,
        }
    }

    /// Sectional curvature of the ambient space.
    pub fn curvature(&self) -> f64 {
        match *self {
            Ambient::Euclidean => 0.0,
            Ambient::Sphere { radius, .. } => 1.0 / (radius * radius),
            Ambient::Hyperbolic { radius, .. } => -1.0 / (radius * radius),
        }
    }

    fn check_dimension(&self, n: usize) -> Result<()> {
        let want = match self {
            Ambient::Euclidean => 4,
            _ => 5,
        };
        if n != want {
            return Err(Error::Precondition(alloc::format!(
                "{self:?} samples need {want} coordinates, got {n}"
            )));
        }
        Ok(())
    }

    /// Unit radial direction at `p` (space forms only).
    fn radial<const N: usize>(&self, p: &Vector<N>) -> Option<Vector<N>> {
        match *self {
            Ambient::Euclidean => None,
            Ambient::Sphere { center, radius } | Ambient::Hyperbolic { center, radius } => {
                Some(core::array::from_fn(|i| (p[i] - center[i]) / radius))
            }
        }
    }

    /// Defect of `p` from lying on the space form: `|⟨p−C,p−C⟩ ∓ R²|/R²`.
    pub fn manifold_defect<const N: usize>(&self, p: &Vector<N>) -> f64 {
        match *self {
            Ambient::Euclidean => 0.0,
            Ambient::Sphere { center, radius } => {
                let d: Vector<N> = core::array::from_fn(|i| p[i] - center[i]);
                (math::dot(&d, &d) - radius * radius).abs() / (radius * radius)
            }
            Ambient::Hyperbolic { center, radius } => {
                let d: Vector<N> = core::array::from_fn(|i| p[i] - center[i]);
                (Signature::Lorentzian.dot(&d, &d) + radius * radius).abs() / (radius * radius)
            }
        }
    }
}

/// First and second fundamental data of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalData<const N: usize> {
    pub ambient: Ambient,
    pub position: Vector<N>,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub xu: Vector<N>,
    pub xv: Vector<N>,
    /// Orthonormalized tangent basis.
    pub y1: Vector<N>,
    pub y2: Vector<N>,
    pub n1: Vector<N>,
    pub n2: Vector<N>,
    /// Unit radial direction (space forms only).
    pub radial: Option<Vector<N>>,
    /// Unprojected second partials `X_uu, X_uv, X_vv` projected to the normal space.
    pub alpha_uu: Vector<N>,
    pub alpha_uv: Vector<N>,
    pub alpha_vv: Vector<N>,
    pub alpha11: Vector<N>,
    pub alpha12: Vector<N>,
    pub alpha22: Vector<N>,
    pub mean_curvature: Vector<N>,
    pub k: f64,
    pub kn: f64,
    pub lambda: f64,
}

impl<const N: usize> FundamentalData<N> {
    pub fn sig(&self) -> Signature {
        self.ambient.signature()
    }

    pub fn dot(&self, a: &Vector<N>, b: &Vector<N>) -> f64 {
        self.sig().dot(a, b)
    }

    pub fn norm(&self, a: &Vector<N>) -> f64 {
        math::sqrt(self.dot(a, a).max(0.0))
    }

    /// Shape operator `A_ξ` on the orthonormal basis `(Ŷ1, Ŷ2)`.
    pub fn shape_operator(&self, xi: &Vector<N>) -> Mat2 {
        let a12 = self.dot(&self.alpha12, xi);
        [
            [self.dot(&self.alpha11, xi), a12],
            [a12, self.dot(&self.alpha22, xi)],
        ]
    }

    /// Shape operator `A_ξ` in coordinates: `I⁻¹ b_ξ` acting on `(∂u, ∂v)` components.
    pub fn shape_operator_coords(&self, xi: &Vector<N>) -> Mat2 {
        let b = [
            [self.dot(&self.alpha_uu, xi), self.dot(&self.alpha_uv, xi)],
            [self.dot(&self.alpha_uv, xi), self.dot(&self.alpha_vv, xi)],
        ];
        let inv = math::mat2_inv(&[[self.e, self.f], [self.f, self.g]])
            .expect("regular sample has invertible first form");
        math::mat2_mul(&inv, &b)
    }

    /// Tangent vector with components `c` in the orthonormal basis.
    pub fn tangent(&self, c: [f64; 2]) -> Vector<N> {
        core::array::from_fn(|i| c[0] * self.y1[i] + c[1] * self.y2[i])
    }

    /// Component of `x` normal to the surface inside the ambient space form.
    pub fn normal_part(&self, x: &Vector<N>) -> Vector<N> {
        let a = self.dot(x, &self.n1);
        let b = self.dot(x, &self.n2);
        core::array::from_fn(|i| a * self.n1[i] + b * self.n2[i])
    }

    /// Component of `x` tangent to the surface.
    pub fn tangent_part(&self, x: &Vector<N>) -> Vector<N> {
        self.tangent([self.dot(x, &self.y1), self.dot(x, &self.y2)])
    }

    /// Orientation sign of `(Ŷ1, Ŷ2, a, b[, ν])`.
    pub fn orientation(&self, t1: &Vector<N>, t2: &Vector<N>, a: &Vector<N>, b: &Vector<N>) -> f64 {
        oriented_det(&[*t1, *t2, *a, *b], self.radial.as_ref())
    }
}

fn oriented_det<const N: usize>(first: &[Vector<N>; 4], radial: Option<&Vector<N>>) -> f64 {
    let rows: [Vector<N>; N] = core::array::from_fn(|i| {
        if i < 4 {
            first[i]
        } else {
            *radial.expect("radial direction for 5-dimensional frames")
        }
    });
    math::det(&rows)
}

fn project_out<const N: usize>(sig: Signature, x: &Vector<N>, basis: &[Vector<N>]) -> Vector<N> {
    let mut out = *x;
    for b in basis {
        let c = sig.dot(&out, b) / sig.dot(b, b);
        out = math::axpy(&out, -c, b);
    }
    out
}

/// Computes the fundamental data of `sample` in `ambient`.
pub fn fundamental_data<const N: usize>(
    sample: &JetVec<N>,
    ambient: Ambient,
) -> Result<FundamentalData<N>> {
    ambient.check_dimension(N)?;
    let sig = ambient.signature();
    let position = sample.value();
    let xu = sample.du();
    let xv = sample.dv();
    let e = sig.dot(&xu, &xu);
    let f = sig.dot(&xu, &xv);
    let g = sig.dot(&xv, &xv);
    let det = e * g - f * f;
    let scale = math::max_abs(&xu).max(math::max_abs(&xv));
    let s2 = scale * scale;
    if !(scale > 1e-150) || !(det > REGULARITY_FLOOR * s2 * s2) || !(e > 0.0) {
        return Err(Error::SingularSample { det });
    }
    let y1 = math::scale(1.0 / math::sqrt(e), &xu);
    let w = math::axpy(&xv, -sig.dot(&xv, &y1), &y1);
    let y2 = math::scale(1.0 / math::sqrt(sig.dot(&w, &w)), &w);

    let radial = ambient.radial(&position);
    let mut span: alloc::vec::Vec<Vector<N>> = alloc::vec![y1, y2];
    if let Some(nu) = radial {
        span.push(nu);
    }

    // Project the ambient basis onto the normal space and keep the two
    // largest projections, lower index first on ties.
    let proj: [Vector<N>; N] =
        core::array::from_fn(|k| project_out(sig, &math::unit::<N>(k), &span));
    let sq: [f64; N] = core::array::from_fn(|k| sig.dot(&proj[k], &proj[k]));
    let mut first = 0;
    for k in 1..N {
        if sq[k] > sq[first] {
            first = k;
        }
    }
    let mut second = if first == 0 { 1 } else { 0 };
    for k in 0..N {
        if k != first && sq[k] > sq[second] {
            second = k;
        }
    }
    let (a, b) = if first < second {
        (first, second)
    } else {
        (second, first)
    };
    let n1 = math::scale(1.0 / math::sqrt(sq[a]), &proj[a]);
    let w = math::axpy(&proj[b], -sig.dot(&proj[b], &n1), &n1);
    let mut n2 = math::scale(1.0 / math::sqrt(sig.dot(&w, &w)), &w);
    if oriented_det(&[y1, y2, n1, n2], radial.as_ref()) < 0.0 {
        n2 = math::scale(-1.0, &n2);
    }

    let normal = |x: Vector<N>| -> Vector<N> {
        let c1 = sig.dot(&x, &n1);
        let c2 = sig.dot(&x, &n2);
        core::array::from_fn(|i| c1 * n1[i] + c2 * n2[i])
    };
    let alpha_uu = normal(sample.duu());
    let alpha_uv = normal(sample.duv());
    let alpha_vv = normal(sample.dvv());

    // Ŷ1 = p X_u, Ŷ2 = q X_u + r X_v
    let p = 1.0 / math::sqrt(e);
    let r = math::sqrt(e / det);
    let q = -f / e * r;
    let alpha11 = math::scale(p * p, &alpha_uu);
    let alpha12: Vector<N> = core::array::from_fn(|i| p * (q * alpha_uu[i] + r * alpha_uv[i]));
    let alpha22: Vector<N> = core::array::from_fn(|i| {
        q * q * alpha_uu[i] + 2.0 * q * r * alpha_uv[i] + r * r * alpha_vv[i]
    });
    let h: Vector<N> = core::array::from_fn(|i| 0.5 * (alpha11[i] + alpha22[i]));
    let k = ambient.curvature() + sig.dot(&alpha11, &alpha22) - sig.dot(&alpha12, &alpha12);

    let shape = |xi: &Vector<N>| -> Mat2 {
        let o = sig.dot(&alpha12, xi);
        [[sig.dot(&alpha11, xi), o], [o, sig.dot(&alpha22, xi)]]
    };
    let (a1, a2) = (shape(&n1), shape(&n2));
    let comm = math::mat2_sub(&math::mat2_mul(&a1, &a2), &math::mat2_mul(&a2, &a1));
    let kn = comm[1][0];
    let lambda = math::sqrt(sig.dot(&h, &h).max(0.0));

    Ok(FundamentalData {
        ambient,
        position,
        e,
        f,
        g,
        xu,
        xv,
        y1,
        y2,
        n1,
        n2,
        radial,
        alpha_uu,
        alpha_uv,
        alpha_vv,
        alpha11,
        alpha12,
        alpha22,
        mean_curvature: h,
        k,
        kn,
        lambda,
    })
}

/// Shape of the ellipse of curvature `{H + cos2θ (α11−α22)/2 + sin2θ α12}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseDescriptor<const N: usize> {
    pub center: Vector<N>,
    pub semi_major: f64,
    pub semi_minor: f64,
    /// `|2⟨α12, α11−α22⟩| / norm²`.
    pub res_orth: f64,
    /// `|‖α11−α22‖ − 2‖α12‖| / norm`.
    pub res_len: f64,
    /// Radius of the best-fitting circle, `(semi_major + semi_minor)/2`.
    pub mu: f64,
    /// The ellipse collapsed to a point (umbilic sample).
    pub is_point: bool,
}

pub fn ellipse_descriptor<const N: usize>(fd: &FundamentalData<N>) -> EllipseDescriptor<N> {
    let d = math::sub(&fd.alpha11, &fd.alpha22);
    let half: Vector<N> = math::scale(0.5, &d);
    let len_d = fd.norm(&d);
    let len_12 = fd.norm(&fd.alpha12);
    // Columns of the generator in normal coordinates.
    let m = [
        [fd.dot(&half, &fd.n1), fd.dot(&fd.alpha12, &fd.n1)],
        [fd.dot(&half, &fd.n2), fd.dot(&fd.alpha12, &fd.n2)],
    ];
    let mtm = [
        [
            m[0][0] * m[0][0] + m[1][0] * m[1][0],
            m[0][0] * m[0][1] + m[1][0] * m[1][1],
        ],
        [
            m[0][0] * m[0][1] + m[1][0] * m[1][1],
            m[0][1] * m[0][1] + m[1][1] * m[1][1],
        ],
    ];
    let (l1, l2, _, _) = math::sym2_eigen(&mtm);
    let semi_major = math::sqrt(l1.max(0.0));
    let semi_minor = math::sqrt(l2.max(0.0)).min(semi_major);

    let scale = fd
        .norm(&fd.alpha11)
        .max(fd.norm(&fd.alpha22))
        .max(len_12)
        .max(math::sqrt(fd.ambient.curvature().abs()));
    let floor = 1e-9 * scale;
    let norm = len_d.max(2.0 * len_12);
    let is_point = norm <= floor || norm == 0.0;
    let (res_orth, res_len) = if is_point {
        (0.0, 0.0)
    } else {
        (
            (2.0 * fd.dot(&fd.alpha12, &d)).abs() / (norm * norm),
            (len_d - 2.0 * len_12).abs() / norm,
        )
    };
    EllipseDescriptor {
        center: fd.mean_curvature,
        semi_major,
        semi_minor,
        res_orth,
        res_len,
        mu: 0.5 * (semi_major + semi_minor),
        is_point,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperconformalityReport {
    pub res_orth: f64,
    pub res_len: f64,
    /// `‖H‖² + c − K − |K_N|`, non-negative up to roundoff.
    pub wintgen_defect: f64,
    pub is_superconformal: bool,
}

impl SuperconformalityReport {
    /// `|wintgen_defect| / ‖H‖²` for samples with `H ≠ 0`.
    pub fn relative_defect(&self, lambda: f64) -> f64 {
        self.wintgen_defect.abs() / (lambda * lambda)
    }
}

pub fn superconformality_test<const N: usize>(
    fd: &FundamentalData<N>,
    tol: f64,
) -> SuperconformalityReport {
    let el = ellipse_descriptor(fd);
    let wintgen = fd.lambda * fd.lambda + fd.ambient.curvature() - fd.k - fd.kn.abs();
    SuperconformalityReport {
        res_orth: el.res_orth,
        res_len: el.res_len,
        wintgen_defect: wintgen,
        is_superconformal: el.res_orth < tol && el.res_len < tol,
    }
}

/// `{Y1, Y2, η, ζ}` with `A_η = [[λ, μ], [μ, λ]]` and `A_ζ = diag(μ, −μ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptedFrame<const N: usize> {
    pub y1: Vector<N>,
    pub y2: Vector<N>,
    pub eta: Vector<N>,
    pub zeta: Vector<N>,
    pub lambda: f64,
    pub mu: f64,
    /// Max-entry deviation of `A_η`, `A_ζ` from the pattern, over `max(λ, μ)`.
    pub pattern_residual: f64,
    /// `⟨(A_η A_ζ − A_ζ A_η) Y1, Y2⟩`.
    pub kn: f64,
    /// Whether `{Y1, Y2, η, ζ}` is positively oriented in the ambient.
    pub ambient_positive: bool,
}

/// Adapted frame at a superconformal, non-minimal, non-umbilic sample.
///
/// `ζ` completes `{Ŷ1, Ŷ2, η}` positively; `Y1` is the `+μ` eigenvector of
/// `A_ζ` and the sign of `Y2` makes the off-diagonal entry of `A_η` equal `+μ`.
pub fn adapted_frame<const N: usize>(fd: &FundamentalData<N>) -> Result<AdaptedFrame<N>> {
    let scale = fd
        .norm(&fd.alpha11)
        .max(fd.norm(&fd.alpha22))
        .max(fd.norm(&fd.alpha12));
    let floor = 1e-9 * scale.max(1e-300);
    if fd.lambda <= floor {
        return Err(Error::FrameUndefined("minimal point"));
    }
    let eta = math::scale(1.0 / fd.lambda, &fd.mean_curvature);
    // ζ: the unit normal orthogonal to η, positively oriented.
    let e1 = fd.dot(&eta, &fd.n1);
    let e2 = fd.dot(&eta, &fd.n2);
    let mut zeta: Vector<N> = core::array::from_fn(|i| -e2 * fd.n1[i] + e1 * fd.n2[i]);
    if fd.orientation(&fd.y1, &fd.y2, &eta, &zeta) < 0.0 {
        zeta = math::scale(-1.0, &zeta);
    }
    let a_zeta = fd.shape_operator(&zeta);
    let (mu, _, v1, _) = math::sym2_eigen(&a_zeta);
    if mu <= floor {
        return Err(Error::FrameUndefined("umbilic point"));
    }
    let a_eta = fd.shape_operator(&eta);
    let rot = [-v1[1], v1[0]];
    let off = v1[0] * (a_eta[0][0] * rot[0] + a_eta[0][1] * rot[1])
        + v1[1] * (a_eta[1][0] * rot[0] + a_eta[1][1] * rot[1]);
    let w = if off >= 0.0 { rot } else { [-rot[0], -rot[1]] };

    // Operators in the (Y1, Y2) basis.
    let in_basis = |a: &Mat2| -> Mat2 {
        let app = |m: &Mat2, x: [f64; 2]| [m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]];
        let d = |x: [f64; 2], y: [f64; 2]| x[0] * y[0] + x[1] * y[1];
        [
            [d(v1, app(a, v1)), d(v1, app(a, w))],
            [d(w, app(a, v1)), d(w, app(a, w))],
        ]
    };
    let eta_m = in_basis(&a_eta);
    let zeta_m = in_basis(&a_zeta);
    let lambda = fd.lambda;
    let pattern_eta = [[lambda, mu], [mu, lambda]];
    let pattern_zeta = [[mu, 0.0], [0.0, -mu]];
    let dev = math::mat2_max_abs(&math::mat2_sub(&eta_m, &pattern_eta))
        .max(math::mat2_max_abs(&math::mat2_sub(&zeta_m, &pattern_zeta)));
    let comm = math::mat2_sub(
        &math::mat2_mul(&eta_m, &zeta_m),
        &math::mat2_mul(&zeta_m, &eta_m),
    );
    let y1 = fd.tangent(v1);
    let y2 = fd.tangent(w);
    Ok(AdaptedFrame {
        y1,
        y2,
        eta,
        zeta,
        lambda,
        mu,
        pattern_residual: dev / lambda.max(mu),
        kn: comm[1][0],
        ambient_positive: fd.orientation(&y1, &y2, &eta, &zeta) > 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::{Jet2, Jet2Vec4};
    use proptest::prelude::*;

    fn torus(a: f64, b: f64, u: f64, v: f64) -> Jet2Vec4 {
        let (u, v) = (Jet2::var_u(u), Jet2::var_v(v));
        JetVec([u.cos() * a, u.sin() * a, v.cos() * b, v.sin() * b])
    }

    fn sphere(rho: f64, u: f64, v: f64) -> Jet2Vec4 {
        // latitude/longitude chart of a round sphere in R³ ⊂ R⁴
        let (u, v) = (Jet2::var_u(u), Jet2::var_v(v));
        JetVec([
            u.sin() * v.cos() * rho,
            u.sin() * v.sin() * rho,
            u.cos() * rho,
            Jet2::ZERO,
        ])
    }

    #[test]
    fn round_sphere() {
        let fd = fundamental_data(&sphere(2.0, 1.1, 0.4), Ambient::Euclidean).unwrap();
        assert!((fd.k - 0.25).abs() < 1e-12);
        assert!(fd.kn.abs() < 1e-12);
        assert!((fd.lambda - 0.5).abs() < 1e-12);
        let el = ellipse_descriptor(&fd);
        assert!(el.is_point && el.semi_major < 1e-12);
        assert_eq!(adapted_frame(&fd), Err(Error::FrameUndefined("umbilic point")));
    }

    #[test]
    fn product_torus() {
        let (a, b) = (1.0, 1.5);
        let fd = fundamental_data(&torus(a, b, 0.3, 1.2), Ambient::Euclidean).unwrap();
        let h2 = 0.25 * (1.0 / (a * a) + 1.0 / (b * b));
        assert!(fd.k.abs() < 1e-12 && fd.kn.abs() < 1e-12);
        assert!((fd.lambda * fd.lambda - h2).abs() < 1e-12);
        let rep = superconformality_test(&fd, 1e-8);
        assert!((rep.wintgen_defect - h2).abs() < 1e-12);
        assert!(rep.res_len > 0.1 && !rep.is_superconformal);
    }

    #[test]
    fn frame_is_orthonormal() {
        let fd = fundamental_data(&torus(1.0, 1.5, 0.3, 1.2), Ambient::Euclidean).unwrap();
        for n in [fd.n1, fd.n2] {
            assert!((math::norm(&n) - 1.0).abs() < 1e-12);
            assert!(math::dot(&n, &fd.xu).abs() < 1e-12);
            assert!(math::dot(&n, &fd.xv).abs() < 1e-12);
        }
        assert!(math::dot(&fd.n1, &fd.n2).abs() < 1e-12);
        assert!(fd.orientation(&fd.y1, &fd.y2, &fd.n1, &fd.n2) > 0.0);
    }

    #[test]
    fn constant_map_is_singular() {
        let s = JetVec::constant(&[1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(
            fundamental_data(&s, Ambient::Euclidean),
            Err(Error::SingularSample { .. })
        ));
    }

    #[test]
    fn great_sphere_in_s4_is_totally_geodesic() {
        // (sinφ cosθ, sinφ sinθ, cosφ, 0, 1) lies in S⁴(e₅; 1)
        let (p, t) = (Jet2::var_u(1.0), Jet2::var_v(0.7));
        let s = JetVec([
            p.sin() * t.cos(),
            p.sin() * t.sin(),
            p.cos(),
            Jet2::ZERO,
            Jet2::constant(1.0),
        ]);
        let fd = fundamental_data(&s, Ambient::sphere(1.0)).unwrap();
        assert!(fd.lambda < 1e-12);
        assert!((fd.k - 1.0).abs() < 1e-12);
        for a in [fd.alpha11, fd.alpha12, fd.alpha22] {
            assert!(math::norm(&a) < 1e-12);
        }
        assert!(ellipse_descriptor(&fd).is_point);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let fd = fundamental_data(&torus(1.0, 1.0, 0.1, 0.2), Ambient::sphere(1.0));
        assert!(matches!(fd, Err(Error::Precondition(_))));
    }

    fn rotation4(angles: [f64; 6]) -> [[f64; 4]; 4] {
        let mut m: [[f64; 4]; 4] = core::array::from_fn(math::unit::<4>);
        let planes = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (k, (i, j)) in planes.into_iter().enumerate() {
            let (s, c) = (math::sin(angles[k]), math::cos(angles[k]));
            for row in m.iter_mut() {
                let (a, b) = (row[i], row[j]);
                row[i] = c * a - s * b;
                row[j] = s * a + c * b;
            }
        }
        m
    }

    /// Rigid motion of the ambient and rotation `(u, v) = R_θ (s, t)` of the parameters.
    fn transform(x: &Jet2Vec4, m: &[[f64; 4]; 4], th: f64) -> Jet2Vec4 {
        let (c, s) = (math::cos(th), math::sin(th));
        let rotated: Jet2Vec4 = JetVec(core::array::from_fn(|i| {
            let mut acc = Jet2::ZERO;
            for k in 0..4 {
                acc = acc + x.0[k].scale(m[i][k]);
            }
            acc
        }));
        JetVec(rotated.0.map(|j| {
            // ∂s = c∂u + s∂v, ∂t = −s∂u + c∂v
            Jet2::new(
                j.v,
                c * j.du + s * j.dv,
                -s * j.du + c * j.dv,
                c * c * j.duu + 2.0 * c * s * j.duv + s * s * j.dvv,
                -c * s * j.duu + (c * c - s * s) * j.duv + c * s * j.dvv,
                s * s * j.duu - 2.0 * c * s * j.duv + c * c * j.dvv,
            )
        }))
    }

    fn generic_surface(u: f64, v: f64) -> Jet2Vec4 {
        let (u, v) = (Jet2::var_u(u), Jet2::var_v(v));
        JetVec([u, v, u * u * 0.5 + u * v * 0.3, (u * 2.0).sin() * v * 0.4 - v * v])
    }

    proptest! {
        #[test]
        fn invariants_are_frame_independent(
            angles in proptest::array::uniform6(-3.0f64..3.0),
            th in -3.0f64..3.0,
            u in -0.5f64..0.5,
            v in -0.5f64..0.5,
        ) {
            let x = generic_surface(u, v);
            let y = transform(&x, &rotation4(angles), th);
            let a = fundamental_data(&x, Ambient::Euclidean).unwrap();
            let b = fundamental_data(&y, Ambient::Euclidean).unwrap();
            let (ea, eb) = (ellipse_descriptor(&a), ellipse_descriptor(&b));
            // res_orth and res_len depend on the tangent basis; the defect does not.
            let (ra, rb) = (superconformality_test(&a, 1e-8), superconformality_test(&b, 1e-8));
            let close = |p: f64, q: f64| (p - q).abs() < 1e-10 * (1.0 + p.abs());
            prop_assert!(close(a.lambda, b.lambda));
            prop_assert!(close(a.k, b.k));
            prop_assert!(close(a.kn.abs(), b.kn.abs()));
            prop_assert!(close(ea.semi_major, eb.semi_major));
            prop_assert!(close(ea.semi_minor, eb.semi_minor));
            prop_assert!(close(ra.wintgen_defect, rb.wintgen_defect));
        }

        #[test]
        fn wintgen_defect_is_squared_axis_gap(u in -0.5f64..0.5, v in -0.5f64..0.5) {
            let fd = fundamental_data(&generic_surface(u, v), Ambient::Euclidean).unwrap();
            let el = ellipse_descriptor(&fd);
            let rep = superconformality_test(&fd, 1e-8);
            let gap = el.semi_major - el.semi_minor;
            prop_assert!(rep.wintgen_defect >= -1e-12);
            prop_assert!((rep.wintgen_defect - gap * gap).abs() < 1e-10);
        }
    }
}
