//! Exact differentiation by truncated Taylor arithmetic.
//!
//! [`ComplexJet`] carries a holomorphic function and its first three complex
//! derivatives at a point. [`Jet2`] carries a real function of `(u, v)` with
//! all partials through second order. Seeding a [`Jet2`] from a [`ComplexJet`]
//! uses the Cauchy–Riemann equations with `z = u + iv`, so the conjugacy
//! identities between real and imaginary parts hold as exact equalities of
//! stored numbers.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, Vector};

/// Denominators (and radicands) smaller than this are rejected.
pub const DIVISION_FLOOR: f64 = 1e-13;

/// Why a holomorphic jet operation could not be carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    Pole,
    BranchPoint,
}

impl Singularity {
    pub fn as_str(self) -> &'static str {
        match self {
            Singularity::Pole => "pole",
            Singularity::BranchPoint => "branch point",
        }
    }
}

/// Value and first three derivatives of a holomorphic function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexJet {
    pub coeffs: [Complex64; 4],
}

impl ComplexJet {
    pub const ZERO: ComplexJet = ComplexJet {
        coeffs: [Complex64::new(0.0, 0.0); 4],
    };

    pub fn new(coeffs: [Complex64; 4]) -> Self {
        ComplexJet { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        let mut j = Self::ZERO;
        j.coeffs[0] = c;
        j
    }

    /// The identity function evaluated at `z`.
    pub fn variable(z: Complex64) -> Self {
        let mut j = Self::constant(z);
        j.coeffs[1] = Complex64::new(1.0, 0.0);
        j
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Jet of the derivative, with the (unknown) fourth derivative set to zero.
    pub fn derivative(&self) -> Self {
        let c = &self.coeffs;
        ComplexJet::new([c[1], c[2], c[3], Complex64::new(0.0, 0.0)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexJet::new(self.coeffs.map(|c| c * s))
    }

    /// `f∘self` given `f` and its first three derivatives at `self.value()`.
    pub fn compose(&self, f: [Complex64; 4]) -> Self {
        let [_, g1, g2, g3] = self.coeffs;
        ComplexJet::new([
            f[0],
            f[1] * g1,
            f[2] * g1 * g1 + f[1] * g2,
            f[3] * g1 * g1 * g1 + f[2] * g1 * g2 * 3.0 + f[1] * g3,
        ])
    }

    pub fn recip(&self) -> core::result::Result<Self, Singularity> {
        let x = self.value();
        if x.norm() < DIVISION_FLOOR {
            return Err(Singularity::Pole);
        }
        let r = x.inv();
        let r2 = r * r;
        Ok(self.compose([r, -r2, r2 * r * 2.0, -r2 * r2 * 6.0]))
    }

    pub fn div(&self, rhs: &Self) -> core::result::Result<Self, Singularity> {
        Ok(*self * rhs.recip()?)
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        self.compose([e; 4])
    }

    pub fn ln(&self) -> core::result::Result<Self, Singularity> {
        let x = self.value();
        if x.norm() < DIVISION_FLOOR {
            return Err(Singularity::BranchPoint);
        }
        let r = x.inv();
        Ok(self.compose([x.ln(), r, -r * r, r * r * r * 2.0]))
    }

    pub fn sqrt(&self) -> core::result::Result<Self, Singularity> {
        let x = self.value();
        if x.norm() < DIVISION_FLOOR {
            return Err(Singularity::BranchPoint);
        }
        let s = x.sqrt();
        let r = x.inv();
        let f1 = s.inv() * 0.5;
        Ok(self.compose([s, f1, -f1 * r * 0.5, f1 * r * r * 0.75]))
    }

    pub fn sin(&self) -> Self {
        let (s, c) = (self.value().sin(), self.value().cos());
        self.compose([s, c, -s, -c])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = (self.value().sin(), self.value().cos());
        self.compose([c, -s, -c, s])
    }

    pub fn sinh(&self) -> Self {
        let (s, c) = (self.value().sinh(), self.value().cosh());
        self.compose([s, c, s, c])
    }

    pub fn cosh(&self) -> Self {
        let (s, c) = (self.value().sinh(), self.value().cosh());
        self.compose([c, s, c, s])
    }

    /// Integer power by repeated squaring; negative exponents go through [`recip`](Self::recip).
    pub fn powi(&self, n: i64) -> core::result::Result<Self, Singularity> {
        let base = if n < 0 { self.recip()? } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = ComplexJet::constant(Complex64::new(1.0, 0.0));
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq * sq;
            }
        }
        Ok(acc)
    }

    /// Real part as a bivariate jet in `(u, v)`, `z = u + iv`.
    pub fn re_jet2(&self) -> Jet2 {
        let [c0, c1, c2, _] = self.coeffs;
        Jet2::new(c0.re, c1.re, -c1.im, c2.re, -c2.im, -c2.re)
    }

    /// Imaginary part as a bivariate jet in `(u, v)`.
    pub fn im_jet2(&self) -> Jet2 {
        let [c0, c1, c2, _] = self.coeffs;
        Jet2::new(c0.im, c1.im, c1.re, c2.im, c2.re, -c2.im)
    }
}

impl Add for ComplexJet {
    type Output = ComplexJet;
    fn add(self, rhs: Self) -> Self {
        ComplexJet::new(core::array::from_fn(|k| self.coeffs[k] + rhs.coeffs[k]))
    }
}

impl Sub for ComplexJet {
    type Output = ComplexJet;
    fn sub(self, rhs: Self) -> Self {
        ComplexJet::new(core::array::from_fn(|k| self.coeffs[k] - rhs.coeffs[k]))
    }
}

impl Neg for ComplexJet {
    type Output = ComplexJet;
    fn neg(self) -> Self {
        ComplexJet::new(self.coeffs.map(|c| -c))
    }
}

impl Mul for ComplexJet {
    type Output = ComplexJet;
    fn mul(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.coeffs;
        let [b0, b1, b2, b3] = rhs.coeffs;
        ComplexJet::new([
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + a1 * b1 * 2.0 + a0 * b2,
            a3 * b0 + a2 * b1 * 3.0 + a1 * b2 * 3.0 + a0 * b3,
        ])
    }
}

/// Real function of `(u, v)` with partials through second order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2 {
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
}

impl Jet2 {
    pub const ZERO: Jet2 = Jet2::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0);

    pub const fn new(v: f64, du: f64, dv: f64, duu: f64, duv: f64, dvv: f64) -> Self {
        Jet2 {
            v,
            du,
            dv,
            duu,
            duv,
            dvv,
        }
    }

    pub const fn constant(c: f64) -> Self {
        Jet2::new(c, 0.0, 0.0, 0.0, 0.0, 0.0)
    }

    /// The coordinate function `u` at `u0`.
    pub const fn var_u(u0: f64) -> Self {
        Jet2::new(u0, 1.0, 0.0, 0.0, 0.0, 0.0)
    }

    /// The coordinate function `v` at `v0`.
    pub const fn var_v(v0: f64) -> Self {
        Jet2::new(v0, 0.0, 1.0, 0.0, 0.0, 0.0)
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.v, self.du, self.dv, self.duu, self.duv, self.dvv]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        Jet2::new(a[0], a[1], a[2], a[3], a[4], a[5])
    }

    pub fn scale(&self, s: f64) -> Self {
        Jet2::from_array(self.to_array().map(|x| s * x))
    }

    /// `f∘self` given `f`, `f′`, `f″` at `self.v`.
    pub fn compose(&self, f0: f64, f1: f64, f2: f64) -> Self {
        Jet2::new(
            f0,
            f1 * self.du,
            f1 * self.dv,
            f1 * self.duu + f2 * self.du * self.du,
            f1 * self.duv + f2 * self.du * self.dv,
            f1 * self.dvv + f2 * self.dv * self.dv,
        )
    }

    pub fn recip(&self) -> Result<Self> {
        if !(self.v.abs() >= DIVISION_FLOOR) {
            return Err(Error::DegenerateJet {
                magnitude: self.v.abs(),
            });
        }
        let r = 1.0 / self.v;
        Ok(self.compose(r, -r * r, 2.0 * r * r * r))
    }

    pub fn div(&self, rhs: &Jet2) -> Result<Self> {
        Ok(*self * rhs.recip()?)
    }

    pub fn sqrt(&self) -> Result<Self> {
        if !(self.v >= DIVISION_FLOOR) {
            return Err(Error::DegenerateJet {
                magnitude: self.v.abs(),
            });
        }
        let s = math::sqrt(self.v);
        Ok(self.compose(s, 0.5 / s, -0.25 / (s * self.v)))
    }

    pub fn sin(&self) -> Self {
        let (s, c) = (math::sin(self.v), math::cos(self.v));
        self.compose(s, c, -s)
    }

    pub fn cos(&self) -> Self {
        let (s, c) = (math::sin(self.v), math::cos(self.v));
        self.compose(c, -s, -c)
    }

    pub fn exp(&self) -> Self {
        let e = math::exp(self.v);
        self.compose(e, e, e)
    }

    pub fn sinh(&self) -> Self {
        let (s, c) = (math::sinh(self.v), math::cosh(self.v));
        self.compose(s, c, s)
    }

    pub fn cosh(&self) -> Self {
        let (s, c) = (math::sinh(self.v), math::cosh(self.v));
        self.compose(c, s, c)
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let mut acc = Jet2::constant(1.0);
        for _ in 0..n {
            acc = acc * *self;
        }
        Ok(acc)
    }

    /// Largest absolute difference over all six stored numbers.
    pub fn max_abs_diff(&self, other: &Jet2) -> f64 {
        let a = self.to_array();
        let b = other.to_array();
        (0..6).fold(0.0f64, |m, k| m.max((a[k] - b[k]).abs()))
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2::new(
            self.v + rhs.v,
            self.du + rhs.du,
            self.dv + rhs.dv,
            self.duu + rhs.duu,
            self.duv + rhs.duv,
            self.dvv + rhs.dvv,
        )
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2::new(
            self.v - rhs.v,
            self.du - rhs.du,
            self.dv - rhs.dv,
            self.duu - rhs.duu,
            self.duv - rhs.duv,
            self.dvv - rhs.dvv,
        )
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, b: Jet2) -> Jet2 {
        let a = self;
        Jet2::new(
            a.v * b.v,
            a.du * b.v + a.v * b.du,
            a.dv * b.v + a.v * b.dv,
            a.duu * b.v + 2.0 * a.du * b.du + a.v * b.duu,
            a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv,
            a.dvv * b.v + 2.0 * a.dv * b.dv + a.v * b.dvv,
        )
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(mut self, rhs: f64) -> Jet2 {
        self.v += rhs;
        self
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(mut self, rhs: f64) -> Jet2 {
        self.v -= rhs;
        self
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        self.scale(rhs)
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        rhs.scale(self)
    }
}

/// A vector of [`Jet2`]s: an ambient-valued map of `(u, v)` with its partials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetVec<const N: usize>(pub [Jet2; N]);

pub type Jet2Vec4 = JetVec<4>;
pub type Jet2Vec5 = JetVec<5>;

impl<const N: usize> Default for JetVec<N> {
    fn default() -> Self {
        JetVec([Jet2::ZERO; N])
    }
}

impl<const N: usize> JetVec<N> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(p: &Vector<N>) -> Self {
        JetVec(p.map(Jet2::constant))
    }

    pub fn value(&self) -> Vector<N> {
        self.0.map(|j| j.v)
    }
    pub fn du(&self) -> Vector<N> {
        self.0.map(|j| j.du)
    }
    pub fn dv(&self) -> Vector<N> {
        self.0.map(|j| j.dv)
    }
    pub fn duu(&self) -> Vector<N> {
        self.0.map(|j| j.duu)
    }
    pub fn duv(&self) -> Vector<N> {
        self.0.map(|j| j.duv)
    }
    pub fn dvv(&self) -> Vector<N> {
        self.0.map(|j| j.dvv)
    }

    /// Second partial `∂i∂j` with `0 = u`, `1 = v`.
    pub fn d2(&self, i: usize, j: usize) -> Vector<N> {
        match (i, j) {
            (0, 0) => self.duu(),
            (1, 1) => self.dvv(),
            _ => self.duv(),
        }
    }

    pub fn dot(&self, other: &Self) -> Jet2 {
        self.dot_sig(other, math::Signature::Euclidean)
    }

    pub fn dot_sig(&self, other: &Self, sig: math::Signature) -> Jet2 {
        let mut s = Jet2::ZERO;
        for i in 0..N {
            s = s + (self.0[i] * other.0[i]).scale(sig.weight(i, N));
        }
        s
    }

    pub fn scale(&self, s: f64) -> Self {
        JetVec(self.0.map(|j| j.scale(s)))
    }

    /// Componentwise product with a scalar jet.
    pub fn scale_jet(&self, s: &Jet2) -> Self {
        JetVec(self.0.map(|j| j * *s))
    }

    pub fn translate(&self, p: &Vector<N>) -> Self {
        let mut out = *self;
        for i in 0..N {
            out.0[i].v += p[i];
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..N).fold(0.0f64, |m, i| m.max(self.0[i].max_abs_diff(&other.0[i])))
    }
}

impl<const N: usize> Add for JetVec<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        JetVec(core::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl<const N: usize> Sub for JetVec<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        JetVec(core::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl<const N: usize> Neg for JetVec<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

fn det3(m: [[Jet2; 3]; 3]) -> Jet2 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Ternary cross product in R⁴ on jets; see [`math::cross4`].
pub fn cross4(a: &Jet2Vec4, b: &Jet2Vec4, c: &Jet2Vec4) -> Jet2Vec4 {
    JetVec(core::array::from_fn(|i| {
        let cols: [usize; 3] = match i {
            0 => [1, 2, 3],
            1 => [0, 2, 3],
            2 => [0, 1, 3],
            _ => [0, 1, 2],
        };
        let minor = [a, b, c].map(|r| cols.map(|k| r.0[k]));
        // cofactor of entry (3, i) of the 4×4 matrix [a; b; c; e_i]
        if (3 + i) % 2 == 0 {
            det3(minor)
        } else {
            -det3(minor)
        }
    }))
}

/// Jets of `g = Re G` and `h = Im G` for a holomorphic `G`.
pub fn seed_surface(jets: &[ComplexJet; 4]) -> (Jet2Vec4, Jet2Vec4) {
    (
        JetVec(jets.map(|j| j.re_jet2())),
        JetVec(jets.map(|j| j.im_jet2())),
    )
}

/// A conjugate pair seeded with jets of its first-derivative fields as well.
///
/// `h_u = −g_v` and `h_v = g_u`, so only `g_u` and `g_v` are stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeededPair {
    pub g: Jet2Vec4,
    pub h: Jet2Vec4,
    pub g_u: Jet2Vec4,
    pub g_v: Jet2Vec4,
}

impl SeededPair {
    pub fn h_u(&self) -> Jet2Vec4 {
        -self.g_v
    }
    pub fn h_v(&self) -> Jet2Vec4 {
        self.g_u
    }
}

pub fn seed_pair(jets: &[ComplexJet; 4]) -> SeededPair {
    let (g, h) = seed_surface(jets);
    let d = jets.map(|j| j.derivative());
    SeededPair {
        g,
        h,
        g_u: JetVec(d.map(|j| j.re_jet2())),
        g_v: JetVec(d.map(|j| -j.im_jet2())),
    }
}

/// Anything that can be sampled as an `N`-vector of jets at `(u, v)`.
pub trait Surface<const N: usize> {
    fn eval(&self, u: f64, v: f64) -> Result<JetVec<N>>;

    /// Whether `(u, v)` lies in the parameter domain.
    fn contains(&self, _u: f64, _v: f64) -> bool {
        true
    }
}

impl<const N: usize, F> Surface<N> for F
where
    F: Fn(f64, f64) -> Result<JetVec<N>>,
{
    fn eval(&self, u: f64, v: f64) -> Result<JetVec<N>> {
        self(u, v)
    }
}

/// Restricts a surface to a closed rectangle.
#[derive(Debug, Clone, Copy)]
pub struct OnRect<S> {
    pub surface: S,
    pub rect: crate::grid::Rect,
}

impl<const N: usize, S: Surface<N>> Surface<N> for OnRect<S> {
    fn eval(&self, u: f64, v: f64) -> Result<JetVec<N>> {
        if !self.contains(u, v) {
            return Err(Error::Domain { u, v });
        }
        self.surface.eval(u, v)
    }
    fn contains(&self, u: f64, v: f64) -> bool {
        self.rect.contains(u, v) && self.surface.contains(u, v)
    }
}

/// Difference between jet partials and Richardson-extrapolated central differences.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FdReport {
    pub first: f64,
    pub second: f64,
}

impl FdReport {
    pub fn residual(&self) -> f64 {
        self.first.max(self.second)
    }
}

/// Compares the jet partials of `surface` at `p` with finite differences on a
/// 5×5 stencil of spacing `step`.
pub fn fd_crosscheck<const N: usize, S: Surface<N> + ?Sized>(
    surface: &S,
    p: (f64, f64),
    step: f64,
) -> Result<FdReport> {
    if !(step > 0.0) {
        return Err(Error::Precondition(alloc::format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    let (u0, v0) = p;
    for i in -2i32..=2 {
        for j in -2i32..=2 {
            let (u, v) = (u0 + i as f64 * step, v0 + j as f64 * step);
            if !surface.contains(u, v) {
                return Err(Error::Domain { u, v });
            }
        }
    }
    let center = surface.eval(u0, v0)?;
    let f0 = center.value();
    let at = |i: i32, j: i32| -> Result<Vector<N>> {
        Ok(surface
            .eval(u0 + i as f64 * step, v0 + j as f64 * step)?
            .value())
    };
    let h = step;
    let mut report = FdReport::default();
    let rich = |d1: f64, d2: f64| (4.0 * d1 - d2) / 3.0;
    let (up1, um1, up2, um2) = (at(1, 0)?, at(-1, 0)?, at(2, 0)?, at(-2, 0)?);
    let (vp1, vm1, vp2, vm2) = (at(0, 1)?, at(0, -1)?, at(0, 2)?, at(0, -2)?);
    let (pp1, pm1, mp1, mm1) = (at(1, 1)?, at(1, -1)?, at(-1, 1)?, at(-1, -1)?);
    let (pp2, pm2, mp2, mm2) = (at(2, 2)?, at(2, -2)?, at(-2, 2)?, at(-2, -2)?);
    for k in 0..N {
        let j = center.0[k];
        let du = rich(
            (up1[k] - um1[k]) / (2.0 * h),
            (up2[k] - um2[k]) / (4.0 * h),
        );
        let dv = rich(
            (vp1[k] - vm1[k]) / (2.0 * h),
            (vp2[k] - vm2[k]) / (4.0 * h),
        );
        let duu = rich(
            (up1[k] - 2.0 * f0[k] + um1[k]) / (h * h),
            (up2[k] - 2.0 * f0[k] + um2[k]) / (4.0 * h * h),
        );
        let dvv = rich(
            (vp1[k] - 2.0 * f0[k] + vm1[k]) / (h * h),
            (vp2[k] - 2.0 * f0[k] + vm2[k]) / (4.0 * h * h),
        );
        let duv = rich(
            (pp1[k] - pm1[k] - mp1[k] + mm1[k]) / (4.0 * h * h),
            (pp2[k] - pm2[k] - mp2[k] + mm2[k]) / (16.0 * h * h),
        );
        report.first = report.first.max((du - j.du).abs()).max((dv - j.dv).abs());
        report.second = report
            .second
            .max((duu - j.duu).abs())
            .max((duv - j.duv).abs())
            .max((dvv - j.dvv).abs());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn exp_at_zero_has_unit_coefficients() {
        let j = ComplexJet::variable(c(0.0, 0.0)).exp();
        for k in 0..4 {
            assert!(close(j.coeffs[k], c(1.0, 0.0), 1e-15));
        }
    }

    #[test]
    fn cos_at_zero() {
        let j = ComplexJet::variable(c(0.0, 0.0)).cos();
        let expected = [1.0, 0.0, -1.0, 0.0];
        for k in 0..4 {
            assert!(close(j.coeffs[k], c(expected[k], 0.0), 1e-15));
        }
    }

    #[test]
    fn recip_at_zero_is_a_pole() {
        let z = ComplexJet::variable(c(0.0, 0.0));
        assert_eq!(z.recip(), Err(Singularity::Pole));
        assert_eq!(z.ln(), Err(Singularity::BranchPoint));
    }

    #[test]
    fn recip_matches_power_rule() {
        // d^k/dz^k z^{-1} = (-1)^k k! z^{-k-1}
        let z0 = c(0.7, -0.4);
        let j = ComplexJet::variable(z0).recip().unwrap();
        let r = z0.inv();
        assert!(close(j.coeffs[1], -r * r, 1e-14));
        assert!(close(j.coeffs[2], r * r * r * 2.0, 1e-14));
        assert!(close(j.coeffs[3], -r * r * r * r * 6.0, 1e-13));
        let p = ComplexJet::variable(z0).powi(-1).unwrap();
        for k in 0..4 {
            assert!(close(p.coeffs[k], j.coeffs[k], 1e-13));
        }
    }

    #[test]
    fn sqrt_and_ln_derivatives() {
        let z0 = c(1.3, 0.6);
        let s = ComplexJet::variable(z0).sqrt().unwrap();
        let sq = s * s;
        assert!(close(sq.coeffs[0], z0, 1e-14));
        assert!(close(sq.coeffs[1], c(1.0, 0.0), 1e-14));
        assert!(close(sq.coeffs[2], c(0.0, 0.0), 1e-14));
        assert!(close(sq.coeffs[3], c(0.0, 0.0), 1e-13));
        let l = ComplexJet::variable(z0).ln().unwrap().exp();
        assert!(close(l.coeffs[0], z0, 1e-14));
        assert!(close(l.coeffs[1], c(1.0, 0.0), 1e-14));
        assert!(close(l.coeffs[3], c(0.0, 0.0), 1e-13));
    }

    #[test]
    fn seed_identity_map() {
        let (g, h) = seed_surface(&[ComplexJet::variable(c(1.0, 2.0)); 4]);
        assert_eq!(g.0[0].to_array(), [1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(h.0[0].to_array(), [2.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn seed_square() {
        let z = ComplexJet::variable(c(0.0, 0.0));
        let (g, _) = seed_surface(&[z * z; 4]);
        assert_eq!(g.0[0].to_array(), [0.0, 0.0, 0.0, 2.0, 0.0, -2.0]);
    }

    #[test]
    fn seed_catenoid_at_origin() {
        let z = ComplexJet::variable(c(0.0, 0.0));
        let minus_i = ComplexJet::constant(c(0.0, -1.0));
        let jets = [z.cos(), z.sin(), minus_i * z, ComplexJet::ZERO];
        let p = seed_pair(&jets);
        assert_eq!(p.g.value(), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(p.h.value(), [0.0, 0.0, 0.0, 0.0]);
        assert_eq!(p.g_u.value(), [0.0, 1.0, 0.0, 0.0]);
        assert_eq!(p.g_v.value(), [0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn jet2_examples() {
        let a = Jet2::new(2.0, 1.0, 0.0, 0.0, 0.0, 0.0);
        let b = Jet2::new(3.0, 0.0, 1.0, 0.0, 0.0, 0.0);
        assert_eq!((a * b).to_array(), [6.0, 3.0, 2.0, 0.0, 1.0, 0.0]);
        // f = (2+u)^2, sqrt f = 2+u: second derivative vanishes
        let f = Jet2::new(4.0, 4.0, 0.0, 2.0, 0.0, 0.0);
        let s = f.sqrt().unwrap();
        assert_eq!(s.to_array(), [2.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(Jet2::constant(1.0).recip().unwrap(), Jet2::constant(1.0));
        assert!(matches!(
            Jet2::constant(1e-14).recip(),
            Err(Error::DegenerateJet { .. })
        ));
    }

    #[test]
    fn cross4_jet_matches_values() {
        let u = Jet2::var_u(0.3);
        let v = Jet2::var_v(-0.2);
        let a = JetVec([u, v, u * v, Jet2::constant(1.0)]);
        let b = JetVec([v.sin(), u.cos(), Jet2::constant(0.5), u * u]);
        let cc = JetVec([u.exp(), Jet2::ZERO, v, u + v]);
        let x = cross4(&a, &b, &cc);
        let xv = math::cross4(&a.value(), &b.value(), &cc.value());
        for i in 0..4 {
            assert!((x.0[i].v - xv[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn fd_on_quadratic() {
        let surf = |u: f64, v: f64| -> Result<JetVec<1>> {
            let (u, v) = (Jet2::var_u(u), Jet2::var_v(v));
            Ok(JetVec([u * u - u * v + v * v * 0.5]))
        };
        let r = fd_crosscheck(&surf, (0.25, -0.125), 1e-3).unwrap();
        assert!(r.residual() < 1e-10, "{r:?}");
    }

    #[test]
    fn fd_rejects_boundary_points() {
        let rect = crate::grid::Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let surf = OnRect {
            surface: |u: f64, _v: f64| -> Result<JetVec<1>> { Ok(JetVec([Jet2::var_u(u)])) },
            rect,
        };
        assert!(matches!(
            fd_crosscheck(&surf, (0.0, 0.5), 1e-3),
            Err(Error::Domain { .. })
        ));
        assert!(fd_crosscheck(&surf, (0.5, 0.5), 1e-3).is_ok());
    }

    fn arb_complex_jet() -> impl Strategy<Value = ComplexJet> {
        proptest::array::uniform8(-2.0f64..2.0).prop_map(|a| {
            ComplexJet::new([c(a[0], a[1]), c(a[2], a[3]), c(a[4], a[5]), c(a[6], a[7])])
        })
    }

    fn arb_jet2() -> impl Strategy<Value = Jet2> {
        proptest::array::uniform6(-2.0f64..2.0).prop_map(Jet2::from_array)
    }

    proptest! {
        #[test]
        fn jet2_ring_axioms(a in arb_jet2(), b in arb_jet2(), c in arb_jet2()) {
            prop_assert!(((a * b) * c).max_abs_diff(&(a * (b * c))) < 1e-12);
            prop_assert!((a * (b + c)).max_abs_diff(&(a * b + a * c)) < 1e-12);
            prop_assert!((a * b).max_abs_diff(&(b * a)) < 1e-12);
        }

        #[test]
        fn complex_jet_ring_axioms(a in arb_complex_jet(), b in arb_complex_jet(), c in arb_complex_jet()) {
            let l = (a * b) * c;
            let r = a * (b * c);
            let d = a * (b + c) - (a * b + a * c);
            for k in 0..4 {
                prop_assert!((l.coeffs[k] - r.coeffs[k]).norm() < 1e-12);
                prop_assert!(d.coeffs[k].norm() < 1e-12);
            }
        }

        #[test]
        fn seeding_is_exactly_cauchy_riemann(a in arb_complex_jet()) {
            let p = seed_pair(&[a; 4]);
            for k in 0..4 {
                prop_assert_eq!(p.g.0[k].du, p.h.0[k].dv);
                prop_assert_eq!(p.g.0[k].dv, -p.h.0[k].du);
                prop_assert_eq!(p.g.0[k].du, p.g_u.0[k].v);
                prop_assert_eq!(p.g.0[k].dv, p.g_v.0[k].v);
            }
        }

        #[test]
        fn jet2_recip_inverts(a in arb_jet2()) {
            prop_assume!(a.v.abs() > 0.1);
            let one = a * a.recip().unwrap();
            prop_assert!(one.max_abs_diff(&Jet2::constant(1.0)) < 1e-9);
        }
    }
}
