//! Quadric classification of holomorphic representatives, recovery of the
//! ambient complex structure for curves in Q₀, and superminimality in the
//! space forms.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::{stereo_from_r4_jets, SpaceForm};
use crate::construct::{build_phi, phi_jets, Sign};
use crate::error::{Error, Result};
use crate::geometry::{self, Ambient};
use crate::grid::Grid;
use crate::jets::JetVec;
use crate::math::{self, Vector};
use crate::minimal::{bilinear, hermitian_norm_sq, MinimalPair};

use super::pairs::{pair_value, Q0_TOL};

pub type Mat4 = [[f64; 4]; 4];

fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    core::array::from_fn(|i| core::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

fn mat4_apply(a: &Mat4, x: &Vector<4>) -> Vector<4> {
    core::array::from_fn(|i| math::dot(&a[i], x))
}

fn mat4_transpose(a: &Mat4) -> Mat4 {
    core::array::from_fn(|i| core::array::from_fn(|j| a[j][i]))
}

fn identity4() -> Mat4 {
    core::array::from_fn(|i| core::array::from_fn(|j| if i == j { 1.0 } else { 0.0 }))
}

fn max_abs4(a: &Mat4) -> f64 {
    a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// An orthogonal complex structure of R⁴ fitted to a conjugate pair in Q₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexStructure {
    /// Rows of `𝒥`.
    pub matrix: Mat4,
    /// Dimension of the span of `{g, g_u, g_v}` over the grid.
    pub span_rank: usize,
    /// `max|𝒥² + I|`.
    pub square_residual: f64,
    /// `max|𝒥ᵀ𝒥 − I|`.
    pub orthogonality_residual: f64,
    /// Largest `‖𝒥a − b‖ / (1 + ‖b‖)` over the equations `𝒥g = h`,
    /// `𝒥g_u = −g_v`, `𝒥g_v = g_u`.
    pub fit_residual: f64,
    /// Fit residual of the structure fitted on one half of the grid, measured
    /// on the other half (both ways).
    pub constancy_residual: f64,
}

impl ComplexStructure {
    pub fn max_residual(&self) -> f64 {
        self.square_residual
            .max(self.orthogonality_residual)
            .max(self.fit_residual)
            .max(self.constancy_residual)
    }

    pub fn apply(&self, x: &Vector<4>) -> Vector<4> {
        mat4_apply(&self.matrix, x)
    }
}

type Equation = (Vector<4>, Vector<4>);

fn equations(pair: &MinimalPair, u: f64, v: f64) -> Result<[Equation; 3]> {
    let sp = pair.split(u, v)?;
    let (g, h, gu, gv) = (sp.g.value(), sp.h.value(), sp.g_u.value(), sp.g_v.value());
    Ok([(g, h), (gu, math::scale(-1.0, &gv)), (gv, gu)])
}

/// Least-squares fit `M = C A⁺` with `A = Σ a aᵀ`, `C = Σ b aᵀ`, extended by a
/// rotation on the orthogonal complement when the span is 2-dimensional.
fn fit(eqs: &[Equation]) -> (Mat4, usize) {
    let mut a = [[0.0; 4]; 4];
    let mut c = [[0.0; 4]; 4];
    for (x, y) in eqs {
        for i in 0..4 {
            for j in 0..4 {
                a[i][j] += x[i] * x[j];
                c[i][j] += y[i] * x[j];
            }
        }
    }
    let (vals, vecs) = math::sym_eigen(&a);
    let top = vals.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut pinv = [[0.0; 4]; 4];
    let mut kept: Vec<Vector<4>> = Vec::new();
    let mut dropped: Vec<Vector<4>> = Vec::new();
    for k in 0..4 {
        let col: Vector<4> = core::array::from_fn(|i| vecs[i][k]);
        if vals[k] > 1e-12 * top && top > 0.0 {
            for i in 0..4 {
                for j in 0..4 {
                    pinv[i][j] += col[i] * col[j] / vals[k];
                }
            }
            kept.push(col);
        } else {
            dropped.push(col);
        }
    }
    let mut m = mat4_mul(&c, &pinv);
    if kept.len() == 2 {
        let (c1, c2) = (dropped[0], dropped[1]);
        let x = kept[0];
        let mx = mat4_apply(&m, &x);
        let s = if math::det(&[x, mx, c1, c2]) >= 0.0 { 1.0 } else { -1.0 };
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] += s * (c2[i] * c1[j] - c1[i] * c2[j]);
            }
        }
    }
    (m, kept.len())
}

fn fit_residual(m: &Mat4, eqs: &[Equation]) -> f64 {
    eqs.iter().fold(0.0f64, |w, (x, y)| {
        w.max(math::norm(&math::sub(&mat4_apply(m, x), y)) / (1.0 + math::norm(y)))
    })
}

/// Fits `𝒥` with `h = 𝒥g` and `𝒥g_* = g_*J` over the grid.
pub fn recover_complex_structure(pair: &MinimalPair, grid: &Grid) -> Result<ComplexStructure> {
    let mut worst: f64 = 0.0;
    let mut eqs: Vec<Equation> = Vec::with_capacity(3 * grid.len());
    for (u, v) in grid.points() {
        let g = pair_value(pair, u, v)?;
        let q = bilinear(&g, &g).norm();
        if q > Q0_TOL * hermitian_norm_sq(&g) {
            worst = worst.max(q);
        }
        eqs.extend(equations(pair, u, v)?);
    }
    if worst > 0.0 {
        return Err(Error::NotQ0 { max_value: worst });
    }
    let (m, rank) = fit(&eqs);
    let half = 3 * (grid.len() / 2);
    let (first, second) = eqs.split_at(half);
    let (m1, _) = fit(first);
    let (m2, _) = fit(second);
    let mut sq = mat4_mul(&m, &m);
    let mut ortho = mat4_mul(&mat4_transpose(&m), &m);
    let id = identity4();
    for i in 0..4 {
        for j in 0..4 {
            sq[i][j] += id[i][j];
            ortho[i][j] -= id[i][j];
        }
    }
    Ok(ComplexStructure {
        matrix: m,
        span_rank: rank,
        square_residual: max_abs4(&sq),
        orthogonality_residual: max_abs4(&ortho),
        fit_residual: fit_residual(&m, &eqs),
        constancy_residual: fit_residual(&m1, second).max(fit_residual(&m2, first)),
    })
}

/// Behaviour of the two dual surfaces of a pair in Q₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Q0CollapseReport {
    pub structure: ComplexStructure,
    /// The sign whose surface collapses to a point.
    pub collapsing: Sign,
    /// The point it collapses to.
    pub constant: Vector<4>,
    /// `max‖φ(p) − φ(p₀)‖` for the collapsing sign.
    pub variation: f64,
    /// The same quantity for the other sign.
    pub other_variation: f64,
    /// `max‖φ_other − 2g^N‖`.
    pub normal_residual: f64,
    pub samples: usize,
}

/// Checks that one of `φ±` is constant and the other is `2g^N` for a pair in Q₀.
pub fn q0_collapse_check(pair: &MinimalPair, grid: &Grid) -> Result<Q0CollapseReport> {
    let structure = recover_complex_structure(pair, grid)?;
    let mut values: [Vec<Vector<4>>; 2] = [Vec::new(), Vec::new()];
    let mut gn: Vec<Vector<4>> = Vec::new();
    for (u, v) in grid.points() {
        let sp = pair.split(u, v)?;
        let (g, gu, gv) = (sp.g.value(), sp.g_u.value(), sp.g_v.value());
        let e = math::dot(&gu, &gu);
        let t = math::add(
            &math::scale(math::dot(&g, &gu) / e, &gu),
            &math::scale(math::dot(&g, &gv) / e, &gv),
        );
        gn.push(math::sub(&g, &t));
        for (k, sign) in Sign::BOTH.iter().enumerate() {
            values[k].push(phi_jets(&sp, *sign)?.value());
        }
    }
    let variation = |vals: &[Vector<4>]| {
        vals.iter()
            .fold(0.0f64, |m, p| m.max(math::norm(&math::sub(p, &vals[0]))))
    };
    let var = [variation(&values[0]), variation(&values[1])];
    let (c, o) = if var[0] <= var[1] { (0, 1) } else { (1, 0) };
    let normal_residual = values[o]
        .iter()
        .zip(&gn)
        .fold(0.0f64, |m, (p, n)| m.max(math::norm(&math::axpy(p, -2.0, n))));
    Ok(Q0CollapseReport {
        structure,
        collapsing: Sign::BOTH[c],
        constant: values[c][0],
        variation: var[c],
        other_variation: var[o],
        normal_residual,
        samples: gn.len(),
    })
}

/// Superminimality diagnostics of a space-form immersion.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SuperminimalReport {
    /// Largest `‖H‖` (mean curvature inside the space form).
    pub h_norm: f64,
    pub res_orth: f64,
    pub res_len: f64,
    /// Largest `|‖H‖² + c − K − |K_N||`.
    pub wintgen_defect: f64,
    /// Every sample has a degenerate (point) ellipse: totally geodesic.
    pub degenerate: bool,
    pub samples: usize,
}

/// Tolerances used by [`SuperminimalReport::is_superminimal`].
pub const MINIMAL_TOL: f64 = 1e-9;
pub const CIRCULARITY_TOL: f64 = 1e-8;

impl SuperminimalReport {
    pub fn is_superminimal(&self) -> bool {
        self.h_norm < MINIMAL_TOL && self.res_orth < CIRCULARITY_TOL && self.res_len < CIRCULARITY_TOL
    }

    pub fn merge(self, o: SuperminimalReport) -> SuperminimalReport {
        if self.samples == 0 {
            return o;
        }
        SuperminimalReport {
            h_norm: self.h_norm.max(o.h_norm),
            res_orth: self.res_orth.max(o.res_orth),
            res_len: self.res_len.max(o.res_len),
            wintgen_defect: self.wintgen_defect.max(o.wintgen_defect),
            degenerate: self.degenerate && o.degenerate,
            samples: self.samples + o.samples,
        }
    }
}

/// Mean curvature and circularity of `f` in a sphere or hyperbolic space.
pub fn superminimal_test(f: &JetVec<5>, ambient: Ambient) -> Result<SuperminimalReport> {
    if ambient == Ambient::Euclidean {
        return Err(Error::Precondition(
            "superminimality is tested in a sphere or hyperbolic space".into(),
        ));
    }
    let defect = ambient.manifold_defect(&f.value());
    if !(defect < super::MANIFOLD_TOL) {
        return Err(Error::Projection(alloc::format!(
            "sample is off the space form (defect {defect:e})"
        )));
    }
    let fd = geometry::fundamental_data(f, ambient)?;
    let el = geometry::ellipse_descriptor(&fd);
    let sc = geometry::superconformality_test(&fd, CIRCULARITY_TOL);
    Ok(SuperminimalReport {
        h_norm: fd.lambda,
        res_orth: el.res_orth,
        res_len: el.res_len,
        wintgen_defect: sc.wintgen_defect.abs(),
        degenerate: el.is_point,
        samples: 1,
    })
}

/// Classification of `k = ⟨⟨G,G⟩⟩` over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadricClass {
    NonConstant,
    /// `k = 0`: `g` is a holomorphic curve for some complex structure.
    Null,
    /// Constant real `k ≠ 0`; `radius = √|k| / 2`.
    Real { k: f64, radius: f64 },
    /// Constant non-real `k`.
    NonReal { k: Complex64 },
}

impl QuadricClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuadricClass::NonConstant => "non-constant",
            QuadricClass::Null => "Q0",
            QuadricClass::Real { .. } => "constant-real",
            QuadricClass::NonReal { .. } => "constant-non-real",
        }
    }
}

/// Grid statistics of `⟨⟨G,G⟩⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricValue {
    pub mean: Complex64,
    pub max_deviation: f64,
    pub samples: usize,
}

/// Superminimality of the projected surfaces `φ±` in each space form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricCrossCheck {
    pub radius: f64,
    /// Combined report in `S⁴(R e₅; R)`, or `None` if projection failed.
    pub sphere: Option<SuperminimalReport>,
    /// Combined report in `H⁴(−R e₅; R)`, or `None` if projection failed.
    pub hyperbolic: Option<SuperminimalReport>,
}

impl QuadricCrossCheck {
    /// The space form in which the projected surfaces are superminimal.
    pub fn matched(&self) -> Option<SpaceForm> {
        let ok = |r: &Option<SuperminimalReport>| r.map(|r| r.samples > 0 && r.is_superminimal());
        if ok(&self.sphere) == Some(true) {
            Some(SpaceForm::Sphere)
        } else if ok(&self.hyperbolic) == Some(true) {
            Some(SpaceForm::Hyperbolic)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricClassification {
    pub value: QuadricValue,
    pub class: QuadricClass,
    pub cross_check: Option<QuadricCrossCheck>,
}

/// Relative constancy threshold for `⟨⟨G,G⟩⟩`.
pub const QUADRIC_CONSTANCY_TOL: f64 = 1e-8;

pub fn quadric_value(pair: &MinimalPair, grid: &Grid) -> Result<QuadricValue> {
    let mut vals = Vec::with_capacity(grid.len());
    for (u, v) in grid.points() {
        let g = pair_value(pair, u, v)?;
        vals.push(bilinear(&g, &g));
    }
    let n = vals.len() as f64;
    let mean = vals.iter().fold(Complex64::new(0.0, 0.0), |s, x| s + x) / n;
    let max_deviation = vals.iter().fold(0.0f64, |m, x| m.max((x - mean).norm()));
    Ok(QuadricValue {
        mean,
        max_deviation,
        samples: vals.len(),
    })
}

/// Lifts the unflagged samples of `φ±` into a space form and merges their
/// superminimality reports; `None` when a sample cannot be lifted.
pub fn project_and_test(pair: &MinimalPair, grid: &Grid, space: SpaceForm, radius: f64) -> Option<SuperminimalReport> {
    let ambient = space.ambient(radius);
    let mut report = SuperminimalReport::default();
    for (u, v) in grid.points() {
        for sign in Sign::BOTH {
            let sample = match build_phi(pair, sign, u, v) {
                Ok(s) if !s.flags.any() => s,
                _ => continue,
            };
            let lifted = stereo_from_r4_jets(space, radius, &sample.phi).ok()?;
            match superminimal_test(&lifted, ambient) {
                Ok(r) => report = report.merge(r),
                Err(Error::SingularSample { .. }) => continue,
                Err(_) => return None,
            }
        }
    }
    Some(report)
}

/// Classifies `⟨⟨G,G⟩⟩` and, for a constant real value, checks in which space
/// form the projected `φ±` are superminimal.
pub fn quadric_criterion(pair: &MinimalPair, grid: &Grid) -> Result<QuadricClassification> {
    let value = quadric_value(pair, grid)?;
    let mean = value.mean;
    let tol = QUADRIC_CONSTANCY_TOL * (1.0 + mean.norm());
    let class = if value.max_deviation >= tol {
        QuadricClass::NonConstant
    } else if mean.norm() < tol {
        QuadricClass::Null
    } else if mean.im.abs() < tol {
        QuadricClass::Real {
            k: mean.re,
            radius: 0.5 * math::sqrt(mean.re.abs()),
        }
    } else {
        QuadricClass::NonReal { k: mean }
    };
    let cross_check = match class {
        QuadricClass::Real { radius, .. } => Some(QuadricCrossCheck {
            radius,
            sphere: project_and_test(pair, grid, SpaceForm::Sphere, radius),
            hyperbolic: project_and_test(pair, grid, SpaceForm::Hyperbolic, radius),
        }),
        _ => None,
    };
    Ok(QuadricClassification {
        value,
        class,
        cross_check,
    })
}
