//! Conformal transforms: inversions in R^N and L^N, the holomorphic inversion
//! `T_R`, duality of holomorphic curves in C², stereographic projections of the
//! space forms, and the checks built on them.

mod pairs;
mod quadric;

pub use pairs::*;
pub use quadric::*;

use alloc::format;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Ambient;
use crate::jets::{Jet2, JetVec};
use crate::math::{self, Mat2, Signature, Vector};
use crate::minimal::bilinear;

/// Denominators of an inversion below `INVERSION_FLOOR · R²` are singular.
pub const INVERSION_FLOOR: f64 = 1e-14;
/// Points of the null quadric with `|⟨⟨Z,Z⟩⟩| < QUADRIC_FLOOR · ‖Z‖²` are singular.
pub const QUADRIC_FLOOR: f64 = 1e-12;
/// Tolerance used to decide whether an input vector is normal and unit.
pub const INPUT_TOL: f64 = 1e-8;

/// Inversion with respect to the sphere `⟨X−P0, X−P0⟩ = ±R²`.
///
/// In the Euclidean case `I(X) = P0 + R²(X−P0)/|X−P0|²`. In L^N the inversion
/// with respect to the hyperbolic space `H(P0; R)` is
/// `I(X) = P0 − R²(X−P0)/⟨X−P0, X−P0⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion<const N: usize> {
    pub center: Vector<N>,
    pub radius: f64,
    pub signature: Signature,
}

impl<const N: usize> Inversion<N> {
    pub fn euclidean(center: Vector<N>, radius: f64) -> Self {
        Inversion {
            center,
            radius,
            signature: Signature::Euclidean,
        }
    }

    pub fn lorentzian(center: Vector<N>, radius: f64) -> Self {
        Inversion {
            center,
            radius,
            signature: Signature::Lorentzian,
        }
    }

    /// `+R²` in R^N, `−R²` in L^N.
    pub fn signed_r2(&self) -> f64 {
        match self.signature {
            Signature::Euclidean => self.radius * self.radius,
            Signature::Lorentzian => -self.radius * self.radius,
        }
    }

    fn check_denominator(&self, q: f64) -> Result<()> {
        if !(q.abs() > INVERSION_FLOOR * self.radius * self.radius) {
            return Err(Error::InversionSingular { denom: q });
        }
        Ok(())
    }

    pub fn apply(&self, p: &Vector<N>) -> Result<Vector<N>> {
        let d = math::sub(p, &self.center);
        let q = self.signature.dot(&d, &d);
        self.check_denominator(q)?;
        Ok(math::axpy(&self.center, self.signed_r2() / q, &d))
    }

    /// The inversion applied to a jet sample, with exact chain-rule partials.
    pub fn apply_jets(&self, x: &JetVec<N>) -> Result<JetVec<N>> {
        let d = x.translate(&math::scale(-1.0, &self.center));
        let q = d.dot_sig(&d, self.signature);
        self.check_denominator(q.v)?;
        let k: Jet2 = q.recip()?.scale(self.signed_r2());
        Ok(d.scale_jet(&k).translate(&self.center))
    }

    /// The normal-bundle map `Pξ = ξ − 2⟨X−P0,ξ⟩/⟨X−P0,X−P0⟩ (X−P0)` at `p`.
    pub fn normal_map(&self, p: &Vector<N>, xi: &Vector<N>) -> Result<Vector<N>> {
        let d = math::sub(p, &self.center);
        let q = self.signature.dot(&d, &d);
        self.check_denominator(q)?;
        Ok(math::axpy(xi, -2.0 * self.signature.dot(&d, xi) / q, &d))
    }
}

/// Residuals of the normal-bundle and shape-operator transformation rule of an
/// inversion at one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalTransformReport {
    /// `|⟨Pξ,Pξ⟩ − ⟨ξ,ξ⟩|`.
    pub isometry_residual: f64,
    /// Largest `|⟨Pξ, ∂(I∘f)⟩| / ‖∂(I∘f)‖` over `∂u`, `∂v`.
    pub normality_residual: f64,
    /// `max|Ã_{Pξ} − (⟨d,d⟩A_ξ + 2⟨d,ξ⟩I)/(±R²)| / (1 + max|rhs|)`.
    pub shape_residual: f64,
}

impl NormalTransformReport {
    pub fn max(&self) -> f64 {
        self.isometry_residual
            .max(self.normality_residual)
            .max(self.shape_residual)
    }
}

/// Shape operator of `ξ` in coordinates, `I⁻¹ b_ξ`, with `b_ξ(i,j) = ⟨∂ij x, ξ⟩`.
/// `ξ` must be normal to the surface in the whole ambient space.
pub fn coordinate_shape_operator<const N: usize>(
    x: &JetVec<N>,
    sig: Signature,
    xi: &Vector<N>,
) -> Result<Mat2> {
    let (xu, xv) = (x.du(), x.dv());
    let first = [
        [sig.dot(&xu, &xu), sig.dot(&xu, &xv)],
        [sig.dot(&xu, &xv), sig.dot(&xv, &xv)],
    ];
    let det = first[0][0] * first[1][1] - first[0][1] * first[0][1];
    let inv = math::mat2_inv(&first).ok_or(Error::SingularSample { det })?;
    let b = [
        [sig.dot(&x.duu(), xi), sig.dot(&x.duv(), xi)],
        [sig.dot(&x.duv(), xi), sig.dot(&x.dvv(), xi)],
    ];
    Ok(math::mat2_mul(&inv, &b))
}

fn normality<const N: usize>(x: &JetVec<N>, sig: Signature, xi: &Vector<N>) -> f64 {
    let (xu, xv) = (x.du(), x.dv());
    let r = |t: &Vector<N>| sig.dot(t, xi).abs() / math::norm(t).max(1e-300);
    r(&xu).max(r(&xv))
}

/// Checks that `P` maps the normal vector `ξ` of `f` to a normal vector of
/// `I∘f` of the same length, and that
/// `Ã_{Pξ} = (⟨f−P0,f−P0⟩ A_ξ + 2⟨f−P0,ξ⟩ I)/(±R²)`.
///
/// `ξ` must be a unit (`⟨ξ,ξ⟩ = ±1`) normal vector of `f` in the ambient R^N
/// or L^N.
pub fn normal_transform_check<const N: usize>(
    inv: &Inversion<N>,
    f: &JetVec<N>,
    xi: &Vector<N>,
) -> Result<NormalTransformReport> {
    let sig = inv.signature;
    let n = normality(f, sig, xi);
    if n > INPUT_TOL {
        return Err(Error::Precondition(format!(
            "xi is not normal to the surface (defect {n:e})"
        )));
    }
    let len = sig.dot(xi, xi);
    if (len.abs() - 1.0).abs() > INPUT_TOL {
        return Err(Error::Precondition(format!(
            "xi must be a unit vector, <xi, xi> = {len}"
        )));
    }
    let p = f.value();
    let image = inv.apply_jets(f)?;
    let pxi = inv.normal_map(&p, xi)?;

    let d = math::sub(&p, &inv.center);
    let a = coordinate_shape_operator(f, sig, xi)?;
    let dd = sig.dot(&d, &d);
    let dx = sig.dot(&d, xi);
    let k = 1.0 / inv.signed_r2();
    let expected = [
        [k * (dd * a[0][0] + 2.0 * dx), k * dd * a[0][1]],
        [k * dd * a[1][0], k * (dd * a[1][1] + 2.0 * dx)],
    ];
    let got = coordinate_shape_operator(&image, sig, &pxi)?;
    let diff = math::mat2_max_abs(&math::mat2_sub(&got, &expected));
    Ok(NormalTransformReport {
        isometry_residual: (sig.dot(&pxi, &pxi) - len).abs(),
        normality_residual: normality(&image, sig, &pxi),
        shape_residual: diff / (1.0 + math::mat2_max_abs(&expected)),
    })
}

/// The holomorphic inversion `T_R(Z) = R² Z / ⟨⟨Z,Z⟩⟩` of C⁴.
pub fn holomorphic_inversion(z: &[Complex64; 4], radius: f64) -> Result<[Complex64; 4]> {
    let q = bilinear(z, z);
    let scale: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    if !(q.norm() > QUADRIC_FLOOR * scale) || scale == 0.0 {
        return Err(Error::QuadricSingular {
            magnitude: q.norm(),
        });
    }
    let k = Complex64::new(radius * radius, 0.0) / q;
    Ok(z.map(|c| k * c))
}

/// The two 4-dimensional space forms reached by stereographic projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceForm {
    /// `S⁴(R e₅; R)`.
    Sphere,
    /// `H⁴(−R e₅; R)`.
    Hyperbolic,
}

impl SpaceForm {
    pub fn ambient(self, radius: f64) -> Ambient {
        match self {
            SpaceForm::Sphere => Ambient::sphere(radius),
            SpaceForm::Hyperbolic => Ambient::hyperbolic(radius),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SpaceForm::Sphere => "sphere",
            SpaceForm::Hyperbolic => "hyperbolic",
        }
    }

    /// Stereographic projection as an inversion of R⁵ or L⁵: the sphere is
    /// projected from its north pole `2R e₅` (inversion of radius `2R`), the
    /// hyperbolic space from `−2R e₅` (Lorentzian inversion of radius `2R`).
    pub fn projection(self, radius: f64) -> Inversion<5> {
        match self {
            SpaceForm::Sphere => Inversion::euclidean([0.0, 0.0, 0.0, 0.0, 2.0 * radius], 2.0 * radius),
            SpaceForm::Hyperbolic => {
                Inversion::lorentzian([0.0, 0.0, 0.0, 0.0, -2.0 * radius], 2.0 * radius)
            }
        }
    }
}

/// Largest accepted defect of a point from its space form before projecting.
pub const MANIFOLD_TOL: f64 = 1e-9;

fn check_radius(radius: f64) -> Result<()> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Precondition(format!(
            "radius must be positive, got {radius}"
        )));
    }
    Ok(())
}

fn check_on_form(space: SpaceForm, radius: f64, p: &Vector<5>) -> Result<()> {
    let defect = space.ambient(radius).manifold_defect(p);
    if !(defect < MANIFOLD_TOL) {
        return Err(Error::Projection(format!(
            "point is off the {} of radius {radius} (defect {defect:e})",
            space.as_str()
        )));
    }
    match space {
        SpaceForm::Sphere => {
            let pole = [0.0, 0.0, 0.0, 0.0, 2.0 * radius];
            if math::norm(&math::sub(p, &pole)) < 1e-12 * radius {
                return Err(Error::Projection("point is the projection pole".into()));
            }
        }
        SpaceForm::Hyperbolic => {
            if !(p[4] > -radius) {
                return Err(Error::Projection(
                    "point lies on the lower sheet of the hyperboloid".into(),
                ));
            }
        }
    }
    Ok(())
}

fn check_in_image(space: SpaceForm, radius: f64, x: &Vector<4>) -> Result<()> {
    if space == SpaceForm::Hyperbolic && !(math::norm(x) < 2.0 * radius) {
        return Err(Error::Projection(format!(
            "point of norm {} is outside the ball of radius {}",
            math::norm(x),
            2.0 * radius
        )));
    }
    Ok(())
}

/// Stereographic projection of a point of the space form onto R⁴.
pub fn stereo_to_r4(space: SpaceForm, radius: f64, p: &Vector<5>) -> Result<Vector<4>> {
    check_radius(radius)?;
    check_on_form(space, radius, p)?;
    let x = space.projection(radius).apply(p)?;
    Ok([x[0], x[1], x[2], x[3]])
}

/// Inverse stereographic projection of a point of R⁴ onto the space form.
pub fn stereo_from_r4(space: SpaceForm, radius: f64, x: &Vector<4>) -> Result<Vector<5>> {
    check_radius(radius)?;
    check_in_image(space, radius, x)?;
    space.projection(radius).apply(&[x[0], x[1], x[2], x[3], 0.0])
}

/// [`stereo_to_r4`] on jets.
pub fn stereo_to_r4_jets(space: SpaceForm, radius: f64, p: &JetVec<5>) -> Result<JetVec<4>> {
    check_radius(radius)?;
    check_on_form(space, radius, &p.value())?;
    let x = space.projection(radius).apply_jets(p)?;
    Ok(JetVec([x.0[0], x.0[1], x.0[2], x.0[3]]))
}

/// [`stereo_from_r4`] on jets.
pub fn stereo_from_r4_jets(space: SpaceForm, radius: f64, x: &JetVec<4>) -> Result<JetVec<5>> {
    check_radius(radius)?;
    check_in_image(space, radius, &x.value())?;
    let padded = JetVec([x.0[0], x.0[1], x.0[2], x.0[3], Jet2::ZERO]);
    space.projection(radius).apply_jets(&padded)
}

#[cfg(test)]
mod tests;
