//! Named fixtures: minimal pairs, space-form immersions and closed-form oracles.
//!
//! Coordinates of R⁵ are `e₁..e₅`; R⁴ is `span{e₁..e₄}` and C² is identified
//! with R⁴ through `(z₁, z₂) ↦ (Re z₁, Im z₁, Re z₂, Im z₂)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::construct::Sign;
use crate::error::{Error, Result};
use crate::expr::parse_curve;
use crate::geometry::Ambient;
use crate::grid::{Domain, Rect};
use crate::jets::{Jet2, Jet2Vec4, Jet2Vec5, JetVec};
use crate::math::{self, Vector};
use crate::minimal::{HolomorphicCurve, MinimalPair};

const TAU: f64 = 2.0 * core::f64::consts::PI;
const PI: f64 = core::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    /// A holomorphic curve `G` defining a conjugate minimal pair.
    MinimalPair,
    /// An immersion into a sphere or hyperbolic space in R⁵ / L⁵.
    SpaceFormImmersion,
    /// An immersion into R⁴ given in closed form.
    Immersion,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::MinimalPair => "minimal-pair",
            EntryKind::SpaceFormImmersion => "space-form-immersion",
            EntryKind::Immersion => "immersion",
        }
    }
}

/// Closed-form surface evaluators.
#[derive(Debug, Clone, Copy)]
pub enum Immersion {
    R4(fn(f64, f64) -> Result<Jet2Vec4>),
    SpaceForm {
        ambient: Ambient,
        eval: fn(f64, f64) -> Result<Jet2Vec5>,
    },
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub description: &'static str,
    /// Curve expression text, or `built-in` for closed-form evaluators.
    pub definition: String,
    /// Default sampling rectangle, inside the domain of every evaluator.
    pub rect: Rect,
    pub pair: Option<MinimalPair>,
    /// A holomorphic curve in C² attached to the entry.
    pub c2_curve: Option<HolomorphicCurve>,
    pub immersion: Option<Immersion>,
    /// Names accepted by [`expected_eval`].
    pub oracles: &'static [&'static str],
}

pub const NAMES: [&str; 11] = [
    "catenoid-helicoid",
    "whitney",
    "veronese",
    "veronese-hyperbolic",
    "enneper-r3",
    "q0-line",
    "q0-trig",
    "q0-trig-perturbed",
    "torus",
    "torus-s4",
    "great-sphere",
];

fn rect(u0: f64, u1: f64, v0: f64, v1: f64) -> Rect {
    Rect::new(u0, u1, v0, v1).expect("catalog rectangles are valid")
}

fn pair_entry(
    name: &'static str,
    description: &'static str,
    text: &str,
    r: Rect,
    domain: Domain,
    oracles: &'static [&'static str],
) -> CatalogEntry {
    let expr = parse_curve(text).expect("catalog expressions parse");
    CatalogEntry {
        name,
        kind: EntryKind::MinimalPair,
        description,
        definition: text.to_string(),
        rect: r,
        pair: Some(MinimalPair::new(HolomorphicCurve::new(expr, domain).named(name))),
        c2_curve: None,
        immersion: None,
        oracles,
    }
}

fn immersion_entry(
    name: &'static str,
    kind: EntryKind,
    description: &'static str,
    r: Rect,
    immersion: Immersion,
    oracles: &'static [&'static str],
) -> CatalogEntry {
    CatalogEntry {
        name,
        kind,
        description,
        definition: "built-in".to_string(),
        rect: r,
        pair: None,
        c2_curve: None,
        immersion: Some(immersion),
        oracles,
    }
}

/// Parameter range of the Veronese fixtures in `(φ, θ)`.
pub fn veronese_rect() -> Rect {
    rect(0.3, PI - 0.3, 0.3, TAU - 0.3)
}

/// `s = log tan(φ/2)`, the isothermal coordinate of the Veronese pair.
pub fn veronese_isothermal(phi: f64) -> f64 {
    math::ln(math::tan(0.5 * phi))
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    let entry = match name {
        "catenoid-helicoid" => {
            let r = rect(0.2, TAU - 0.2, -1.5, 1.5);
            pair_entry(
                "catenoid-helicoid",
                "G(z) = (cos z, sin z, -i z, 0): catenoid g and helicoid h",
                "(cos(z), sin(z), -i*z, 0)",
                r,
                Domain::rect(rect(-10.0, 10.0, -3.0, 3.0)),
                &["phi+", "phi-"],
            )
        }
        "whitney" => {
            let r = rect(0.3, 1.5, -1.0, 1.0);
            let domain = Domain::rect(rect(-2.5, 2.5, -2.5, 2.5)).excluding((0.0, 0.0), 0.2);
            let mut e = pair_entry(
                "whitney",
                "minimal pair (1/4)(1/conj z, conj z), (i/4)(1/conj z, conj z) of the Whitney sphere, \
                 the inversion of f(z) = (z, 1/z) in the unit sphere",
                "(1/(4*z), i/(4*z), z/4, i*z/4)",
                r,
                domain.clone(),
                &["g", "h", "f", "inverted-f", "sphere"],
            );
            e.c2_curve = Some(
                HolomorphicCurve::new(parse_curve("(z, 1/z)").expect("parses"), domain)
                    .named("whitney-f"),
            );
            e
        }
        "veronese" => {
            let (s0, s1) = (veronese_isothermal(0.3), veronese_isothermal(PI - 0.3));
            let r = rect(s0, s1, 0.3, TAU - 0.3);
            let mut e = pair_entry(
                "veronese",
                "conjugate pair of the stereographic projection of the Veronese surface, \
                 parameter w = log tan(phi/2) + i theta; the immersion and oracles use (phi, theta)",
                "(-i*(2/sqrt(3))*sinh(2*z), (4/sqrt(3))*sinh(z), -i*(4/sqrt(3))*cosh(z), (2/sqrt(3))*cosh(2*z))",
                r,
                Domain::rect(rect(s0 - 0.5, s1 + 0.5, -1.0, TAU + 1.0)),
                &["g", "h", "metric", "f"],
            );
            e.immersion = Some(Immersion::SpaceForm {
                ambient: Ambient::sphere(1.0),
                eval: veronese_f_jets,
            });
            e
        }
        "veronese-hyperbolic" => immersion_entry(
            "veronese-hyperbolic",
            EntryKind::SpaceFormImmersion,
            "the Veronese surface projected to R4, scaled by 1/8 and lifted to H4(-e5; 1)",
            veronese_rect(),
            Immersion::SpaceForm {
                ambient: Ambient::hyperbolic(1.0),
                eval: veronese_hyperbolic_jets,
            },
            &[],
        ),
        "enneper-r3" => {
            let r = rect(0.2, 1.2, -0.8, 0.8);
            pair_entry(
                "enneper-r3",
                "Enneper surface in R3 = span{e1, e2, e3} with its conjugate",
                "(z/2 - z^3/6, i*(z/2 + z^3/6), z^2/2, 0)",
                r,
                Domain::rect(rect(-3.0, 3.0, -3.0, 3.0)),
                &[],
            )
        }
        "q0-line" => pair_entry(
            "q0-line",
            "holomorphic line in the null quadric",
            "(z, i*z, 0, 0)",
            rect(-1.0, 1.0, -1.0, 1.0),
            Domain::rect(rect(-3.0, 3.0, -3.0, 3.0)),
            &[],
        ),
        "q0-trig" => pair_entry(
            "q0-trig",
            "holomorphic curve in the null quadric",
            "(sin(z), i*sin(z), cos(z), i*cos(z))",
            rect(-1.0, 1.0, -1.0, 1.0),
            Domain::rect(rect(-3.0, 3.0, -3.0, 3.0)),
            &[],
        ),
        "q0-trig-perturbed" => pair_entry(
            "q0-trig-perturbed",
            "isotropic curve off the null quadric (epsilon = 1/2 perturbation of q0-trig)",
            "(sin(z) + 0.125*cos(2*z), i*(sin(z) - 0.125*cos(2*z)), \
             cos(z) - 0.25*z - 0.125*sin(2*z), i*(cos(z) + 0.25*z + 0.125*sin(2*z)))",
            rect(-1.0, 1.0, -1.0, 1.0),
            Domain::rect(rect(-3.0, 3.0, -3.0, 3.0)),
            &[],
        ),
        "torus" => immersion_entry(
            "torus",
            EntryKind::Immersion,
            "product torus (cos u, sin u, 1.5 cos v, 1.5 sin v): not superconformal",
            rect(0.0, TAU, 0.0, TAU),
            Immersion::R4(torus_jets),
            &[],
        ),
        "torus-s4" => immersion_entry(
            "torus-s4",
            EntryKind::SpaceFormImmersion,
            "product torus (0.6 cos u, 0.6 sin u, 0.8 cos v, 0.8 sin v, 1) in S4(e5; 1): not minimal",
            rect(0.0, TAU, 0.0, TAU),
            Immersion::SpaceForm {
                ambient: Ambient::sphere(1.0),
                eval: torus_s4_jets,
            },
            &[],
        ),
        "great-sphere" => immersion_entry(
            "great-sphere",
            EntryKind::SpaceFormImmersion,
            "totally geodesic 2-sphere of S4(e5; 1) in coordinates (phi, theta)",
            rect(0.3, PI - 0.3, 0.0, TAU),
            Immersion::SpaceForm {
                ambient: Ambient::sphere(1.0),
                eval: great_sphere_jets,
            },
            &[],
        ),
        _ => return Err(Error::NotFound(name.to_string())),
    };
    Ok(entry)
}

/// Evaluates a named closed-form oracle of `entry` at `(u, v)`.
///
/// Oracles: `phi+`, `phi-` (catenoid-helicoid); `g`, `h` as R⁴ maps, `f`,
/// `inverted-f` and `sphere` (whitney, at `z = u + iv`); `g`, `h`, `f` and
/// `metric = (E, F, G)` in `(φ, θ) = (u, v)` (veronese).
pub fn expected_eval(entry: &CatalogEntry, oracle: &str, u: f64, v: f64) -> Result<Vec<f64>> {
    let unsupported = || {
        Error::Unsupported(format!(
            "entry `{}` has no oracle `{oracle}` (available: {})",
            entry.name,
            entry.oracles.join(", ")
        ))
    };
    let out: Vec<f64> = match (entry.name, oracle) {
        ("catenoid-helicoid", "phi+") => catenoid_phi(Sign::Plus, u, v).to_vec(),
        ("catenoid-helicoid", "phi-") => catenoid_phi(Sign::Minus, u, v).to_vec(),
        ("whitney", "g" | "h" | "f" | "inverted-f" | "sphere") => {
            let z = Complex64::new(u, v);
            if z.norm() < 1e-300 {
                return Err(Error::Domain { u, v });
            }
            match oracle {
                "g" => whitney_g(z).to_vec(),
                "h" => whitney_h(z).to_vec(),
                "f" => c2_to_r4(z, z.inv()).to_vec(),
                "inverted-f" => {
                    let f = c2_to_r4(z, z.inv());
                    math::scale(1.0 / math::dot(&f, &f), &f).to_vec()
                }
                _ => {
                    let (x, y, zz) = whitney_chart(z);
                    whitney_sphere(x, y, zz).to_vec()
                }
            }
        }
        ("veronese", "g") => veronese_g_jets(u, v).value().to_vec(),
        ("veronese", "h") => veronese_h_jets(u, v).value().to_vec(),
        ("veronese", "f") => veronese_f_jets(u, v)?.value().to_vec(),
        ("veronese", "metric") => {
            let (e, g) = veronese_metric(u);
            vec![e, 0.0, g]
        }
        _ => return Err(unsupported()),
    };
    Ok(out)
}

/// `(1/cosh v)(cos u + u sin u, sin u − u cos u, v cosh v − sinh v, ±u sinh v)`.
///
/// The central sphere of this surface is centered on the catenoid, which pins
/// down the signs of the `u` terms.
pub fn catenoid_phi(sign: Sign, u: f64, v: f64) -> Vector<4> {
    let (c, s) = (math::cos(u), math::sin(u));
    let (ch, sh) = (math::cosh(v), math::sinh(v));
    [
        (c + u * s) / ch,
        (s - u * c) / ch,
        (v * ch - sh) / ch,
        sign.factor() * u * sh / ch,
    ]
}

pub fn c2_to_r4(a: Complex64, b: Complex64) -> Vector<4> {
    [a.re, a.im, b.re, b.im]
}

/// `(1/4)(1/z̄, z̄)`.
pub fn whitney_g(z: Complex64) -> Vector<4> {
    let w = z.conj();
    math::scale(0.25, &c2_to_r4(w.inv(), w))
}

/// `(i/4)(1/z̄, z̄)`.
pub fn whitney_h(z: Complex64) -> Vector<4> {
    let w = z.conj();
    let i = Complex64::new(0.0, 0.25);
    c2_to_r4(i * w.inv(), i * w)
}

/// `(x, y, z) ↦ (x(1+iz), y(1+iz)) / (1+z²)` on the unit sphere.
pub fn whitney_sphere(x: f64, y: f64, z: f64) -> Vector<4> {
    let k = Complex64::new(1.0, z) / (1.0 + z * z);
    c2_to_r4(k * x, k * y)
}

/// The chart `w ↦ (2 Re w, 2 Im w, 1 − |w|²) / (1 + |w|²)` of the unit sphere.
pub fn whitney_chart(w: Complex64) -> (f64, f64, f64) {
    let n = w.norm_sqr();
    (2.0 * w.re / (1.0 + n), 2.0 * w.im / (1.0 + n), (1.0 - n) / (1.0 + n))
}

/// The similarity of C² taking `I∘f(w)` to the Whitney sphere at
/// `whitney_chart(w)`: `(F₁, F₂) ↦ (1+i)(Re F₂ − i Re F₁, −Im F₂ − i Im F₁)`.
pub fn whitney_alignment(f: &Vector<4>) -> Vector<4> {
    let k = Complex64::new(1.0, 1.0);
    c2_to_r4(
        k * Complex64::new(f[2], -f[0]),
        k * Complex64::new(-f[3], -f[1]),
    )
}

fn sc(x: Jet2) -> (Jet2, Jet2) {
    (x.sin(), x.cos())
}

/// `X₁ = sin2θ e₁ + cos2θ e₄`, `X₂ = cosθ e₂ + sinθ e₃`,
/// `X₃ = cos2θ e₁ − sin2θ e₄`, `X₄ = −sinθ e₂ + cosθ e₃`.
fn veronese_frame(theta: Jet2) -> [Jet2Vec4; 4] {
    let z = Jet2::ZERO;
    let (s, c) = sc(theta);
    let (s2, c2) = sc(theta * 2.0);
    [
        JetVec([s2, z, z, c2]),
        JetVec([z, c, s, z]),
        JetVec([c2, z, z, -s2]),
        JetVec([z, -s, c, z]),
    ]
}

/// Closed-form `g(φ, θ) = (2/(√3 sin²φ))((1+cos²φ)X₁ − 2 sinφ cosφ X₂)`.
pub fn veronese_g_jets(phi: f64, theta: f64) -> Jet2Vec4 {
    let (p, t) = (Jet2::var_u(phi), Jet2::var_v(theta));
    let [x1, x2, _, _] = veronese_frame(t);
    let (s, c) = sc(p);
    let k = (s * s).recip().expect("sin φ ≠ 0 on the chart") * (2.0 / math::sqrt(3.0));
    (x1.scale_jet(&(c * c + 1.0)) - x2.scale_jet(&(s * c * 2.0))).scale_jet(&k)
}

/// Closed-form `h(φ, θ) = (4/(√3 sin²φ))(cosφ X₃ − sinφ X₄)`.
pub fn veronese_h_jets(phi: f64, theta: f64) -> Jet2Vec4 {
    let (p, t) = (Jet2::var_u(phi), Jet2::var_v(theta));
    let [_, _, x3, x4] = veronese_frame(t);
    let (s, c) = sc(p);
    let k = (s * s).recip().expect("sin φ ≠ 0 on the chart") * (4.0 / math::sqrt(3.0));
    (x3.scale_jet(&c) - x4.scale_jet(&s)).scale_jet(&k)
}

/// `(E_φφ, E_θθ)` of `ds² = 4(1+3cos²φ)/sin⁶φ (sin²φ dθ² + dφ²)`.
pub fn veronese_metric(phi: f64) -> (f64, f64) {
    let (s, c) = (math::sin(phi), math::cos(phi));
    let k = 4.0 * (1.0 + 3.0 * c * c) / (s * s * s * s * s * s);
    (k, k * s * s)
}

/// The Veronese surface in `S⁴(e₅; 1)`:
/// `(√3/2)(sin²φ X₁ + sin2φ X₂) + ((1 − 3cos²φ)/2 + 1) e₅` at `(φ, θ)`.
pub fn veronese_f_jets(phi: f64, theta: f64) -> Result<Jet2Vec5> {
    let (p, t) = (Jet2::var_u(phi), Jet2::var_v(theta));
    let [x1, x2, _, _] = veronese_frame(t);
    let (s, c) = sc(p);
    let k = 0.5 * math::sqrt(3.0);
    let xy = (x1.scale_jet(&(s * s)) + x2.scale_jet(&(s * c * 2.0))).scale(k);
    let e5 = (c * c * -3.0 + 1.0) * 0.5 + 1.0;
    Ok(JetVec([xy.0[0], xy.0[1], xy.0[2], xy.0[3], e5]))
}

/// Scale applied before lifting the projected Veronese into `H⁴(−e₅; 1)`.
pub const VERONESE_HYPERBOLIC_SCALE: f64 = 0.125;

fn veronese_hyperbolic_jets(phi: f64, theta: f64) -> Result<Jet2Vec5> {
    use crate::moebius::{stereo_from_r4_jets, stereo_to_r4_jets, SpaceForm};
    let x = stereo_to_r4_jets(SpaceForm::Sphere, 1.0, &veronese_f_jets(phi, theta)?)?;
    stereo_from_r4_jets(SpaceForm::Hyperbolic, 1.0, &x.scale(VERONESE_HYPERBOLIC_SCALE))
}

fn torus_jets(u: f64, v: f64) -> Result<Jet2Vec4> {
    let (su, cu) = sc(Jet2::var_u(u));
    let (sv, cv) = sc(Jet2::var_v(v));
    Ok(JetVec([cu, su, cv * 1.5, sv * 1.5]))
}

fn torus_s4_jets(u: f64, v: f64) -> Result<Jet2Vec5> {
    let (su, cu) = sc(Jet2::var_u(u));
    let (sv, cv) = sc(Jet2::var_v(v));
    Ok(JetVec([cu * 0.6, su * 0.6, cv * 0.8, sv * 0.8, Jet2::constant(1.0)]))
}

fn great_sphere_jets(phi: f64, theta: f64) -> Result<Jet2Vec5> {
    let (sp, cp) = sc(Jet2::var_u(phi));
    let (st, ct) = sc(Jet2::var_v(theta));
    Ok(JetVec([sp * ct, sp * st, cp, Jet2::ZERO, Jet2::constant(1.0)]))
}
