//! The acceptance suite: thirteen numbered criteria, each with fixed fixtures
//! and thresholds. `superconf selftest` and the `acceptance` test target both
//! run it.

use std::f64::consts::PI;
use std::fmt;

use superconf_core::catalog::{self, Immersion};
use superconf_core::construct::{self, Sign};
use superconf_core::expr::parse_curve;
use superconf_core::geometry::{self, fundamental_data, Ambient};
use superconf_core::grid::{Domain, Grid, Rect};
use superconf_core::jets::{fd_crosscheck, Jet2Vec4, JetVec};
use superconf_core::math::{self, Vector};
use superconf_core::minimal::{self, HolomorphicCurve, MinimalPair};
use superconf_core::moebius::{self, Inversion, SpaceForm};
use superconf_core::{Complex64, Error};

use crate::commands::{self, SignStats};
use crate::config::{RunConfig, SignChoice};
use crate::{golden, parallel, CliError};

pub const TITLES: [&str; 13] = [
    "catenoid/helicoid closed form",
    "superconformality of constructed surfaces",
    "dual-pair claims",
    "pair transform under inversion",
    "holomorphic inversion preserves conjugate pairs",
    "duality of holomorphic curves",
    "pairs in the null quadric",
    "Whitney sphere reconstruction",
    "Veronese surface",
    "space-form transforms",
    "reflection of R3 pairs",
    "associated family",
    "infrastructure",
];

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    /// Measured quantities and notes, in evaluation order.
    pub details: Vec<String>,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title
        )?;
        if !self.details.is_empty() {
            write!(f, " [{}]", self.details.join("; "))?;
        }
        Ok(())
    }
}

/// Collects threshold checks and notes for one criterion.
#[derive(Debug, Default)]
struct Checks {
    passed: bool,
    details: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { passed: true, details: Vec::new() }
    }

    /// Requires `value < tol`; NaN fails.
    fn below(&mut self, name: &str, value: f64, tol: f64) {
        let ok = value < tol;
        self.passed &= ok;
        self.details.push(format!("{name} = {value:.3e} {} {tol:.0e}", if ok { "<" } else { "NOT <" }));
    }

    fn above(&mut self, name: &str, value: f64, floor: f64) {
        let ok = value > floor;
        self.passed &= ok;
        self.details.push(format!("{name} = {value:.3e} {} {floor}", if ok { ">" } else { "NOT >" }));
    }

    fn require(&mut self, name: &str, ok: bool) {
        self.passed &= ok;
        if !ok {
            self.details.push(format!("{name}: failed"));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }
}

fn rect(u0: f64, u1: f64, v0: f64, v1: f64) -> Rect {
    Rect::new(u0, u1, v0, v1).expect("fixture rectangles are valid")
}

fn grid(r: Rect, nu: usize, nv: usize) -> Grid {
    Grid::new(r, nu, nv).expect("fixture grids are valid")
}

fn pair(name: &str) -> Result<MinimalPair, CliError> {
    catalog::get(name)?
        .pair
        .ok_or_else(|| CliError::Core(Error::Unsupported(format!("{name} has no pair"))))
}

/// The grid of criteria 1 and 3.
pub fn catenoid_grid() -> Grid {
    grid(rect(0.2, 2.0 * PI - 0.2, -1.5, 1.5), 64, 64)
}

/// Criterion-2 thresholds on both signs of `pair` over `g`, at unflagged
/// points. A sign whose samples are all flagged (the collapsing surface of a
/// pair in Q₀) is noted; the pair must have unflagged samples for some sign.
fn superconformal_checks(c: &mut Checks, label: &str, pair: &MinimalPair, g: &Grid, threads: usize) -> Result<(), CliError> {
    let mut unflagged = 0;
    for sign in Sign::BOTH {
        let rows = commands::phi_rows(pair, sign, g, threads)?;
        let s = SignStats::from_rows(sign, &rows);
        let name = format!("{label} phi_{}", sign.as_str());
        unflagged += s.samples - s.flagged;
        if s.flagged == s.samples {
            c.note(format!("{name} flagged at all {} points", s.samples));
            continue;
        }
        c.below(&format!("{name} res_orth"), s.max_res_orth, 1e-8);
        c.below(&format!("{name} res_len"), s.max_res_len, 1e-8);
        c.below(&format!("{name} rel. Wintgen"), s.max_relative_wintgen, 1e-8);
        if s.flagged > 0 {
            c.note(format!("{name} flagged {}/{}", s.flagged, s.samples));
        }
    }
    c.require(&format!("{label} has unflagged samples"), unflagged > 0);
    Ok(())
}

fn criterion_1(threads: usize) -> Result<Checks, CliError> {
    let mut c = Checks::new();
    let p = pair("catenoid-helicoid")?;
    let g = catenoid_grid();
    // err[s][t]: built sign s against closed-form sign t.
    let per_point = parallel::map_grid(&g, threads, |_, (u, v)| {
        let sp = p.split(u, v)?;
        let mut e = [[0.0f64; 2]; 2];
        for (i, s) in Sign::BOTH.iter().enumerate() {
            let phi = construct::phi_jets(&sp, *s)?.value();
            for (j, t) in Sign::BOTH.iter().enumerate() {
                e[i][j] = math::max_abs(&math::sub(&phi, &catalog::catenoid_phi(*t, u, v)));
            }
        }
        Ok::<_, Error>(e)
    });
    let mut err = [[0.0f64; 2]; 2];
    for e in per_point {
        let e = e?;
        for i in 0..2 {
            for j in 0..2 {
                err[i][j] = err[i][j].max(e[i][j]);
            }
        }
    }
    let direct = err[0][0].max(err[1][1]);
    let swapped = err[0][1].max(err[1][0]);
    let swap = swapped < direct;
    c.below("sup error", direct.min(swapped), 1e-9);
    c.note(format!("label swap: {}", if swap { "yes" } else { "no" }));
    Ok(c)
}

fn criterion_2(threads: usize) -> Result<Checks, CliError> {
    let mut c = Checks::new();
    for name in ["catenoid-helicoid", "whitney", "q0-trig-perturbed"] {
        let e = catalog::get(name)?;
        let p = e.pair.clone().expect("pair entries");
        superconformal_checks(&mut c, name, &p, &grid(e.rect, 32, 32), threads)?;
    }
    let torus = catalog::get("torus")?;
    let Some(Immersion::R4(eval)) = torus.immersion else {
        return Err(Error::Unsupported("torus is not an R4 immersion".into()).into());
    };
    let tg = grid(torus.rect, 32, 32);
    let defects = parallel::map_grid(&tg, threads, |_, (u, v)| {
        let fd = fundamental_data(&eval(u, v)?, Ambient::Euclidean)?;
        Ok::<_, Error>(geometry::superconformality_test(&fd, 1e-8).wintgen_defect)
    });
    let mut min = f64::INFINITY;
    for d in defects {
        min = min.min(d?);
    }
    c.above("torus min Wintgen defect", min, 0.1);
    Ok(c)
}

fn criterion_3(threads: usize) -> Result<Checks, CliError> {
    let mut c = Checks::new();
    let s = commands::dual_pair_stats(&pair("catenoid-helicoid")?, &catenoid_grid(), threads)?;
    c.require("dual-pair samples", s.samples > 0);
    c.below("central-sphere center", s.center, 1e-7);
    c.below("conformal factor", s.conformal, 1e-7);
    c.below("metric relation", s.metric_relation, 1e-7);
    c.below("translation invariance", s.translation, 1e-9);
    if s.skipped > 0 {
        c.note(format!("skipped {} points", s.skipped));
    }
    Ok(c)
}

fn criterion_4() -> Result<Checks, CliError> {
    let mut c = Checks::new();
    let p = pair("catenoid-helicoid")?;
    let e = catalog::get("catenoid-helicoid")?;
    let inv = Inversion::euclidean([0.0, 0.0, 0.0, 5.0], 1.0);
    for sign in Sign::BOTH {
        let r = moebius::pair_transform_check(&p, &inv, sign, &grid(e.rect, 20, 20))?;
        c.require("pair-transform samples", r.samples > 0);
        c.below(&format!("phi_{} sup error", sign.as_str()), r.best_error(), 1e-5);
        c.note(format!("phi_{} convention: {}", sign.as_str(), r.matched().as_str()));
    }
    Ok(c)
}

/// Center of the inversion for criterion 5, chosen so that `G − P0` stays off Q₀.
pub const TRANSFORMED_PAIR_CENTER: Vector<4> = [0.0, 0.0, 5.0, 0.0];

fn criterion_5(threads: usize) -> Result<Checks, CliError> {
    let mut c = Checks::new();
    let p = pair("catenoid-helicoid")?;
    let e = catalog::get("catenoid-helicoid")?;
    let t = moebius::transformed_pair(&p, &TRANSFORMED_PAIR_CENTER, 1.0);
    let cert = commands::certify_parallel(&t, &grid(e.rect, 20, 20), threads)?;
    c.below("isotropy", cert.isotropy_max, 1e-8);
    c.below("conjugacy", cert.conjugacy_max, 1e-8);
    c.below("minimality", cert.minimality_max, 1e-8);
    c.require("no singular points", cert.singular_points == 0);
    Ok(c)
}

/// Pole-free rectangle for the duality fixtures.
pub fn duality_rect() -> Rect {
    rect(0.3, 1.5, -1.0, 1.0)
}

fn criterion_6(threads: usize) -> Result<Checks, CliError> {
    let mut c = Checks::new();
    let r = duality_rect();
    for text in ["(z, 1/z)", "(z, z^2)", "(z, exp(z))"] {
        let curve = HolomorphicCurve::new(parse_curve(text)?, Domain::rect(r));
        let s = commands::duality_stats(&curve, &grid(r, 24, 24), threads)?;
        c.require(&format!("{text} samples"), s.samples > 0 && s.singular == 0);
        c.below(&format!("{text} anti-holomorphic"), s.anti_holomorphic, 1e-8);
        c.below(&format!("{text} involution"), s.involution, 1e-9);
        c.below(&format!("{text} conformality"), s.conformality, 1e-8);
    }
    let whitney = catalog::get("whitney")?.c2_curve.expect("whitney has a C2 curve");
    let at1 = moebius::duality(&whitney, 1.0, 0.0)?.fstar.value();
    c.below("|f*(1) - (1/4, 1/4)|", math::max_abs(&math::sub(&at1, &[0.25, 0.0, 0.25, 0.0])), 1e-12);
    Ok(c)
}

fn criterion_7() -> Result<Checks, CliError> {
    let mut c = Checks::new();
    for name in ["q0-line", "q0-trig"] {
        let e = catalog::get(name)?;
        let t = moebius::q0_collapse_check(e.pair.as_ref().expect("pair entries"), &grid(e.rect, 16, 16))?;
        let s = &t.structure;
        c.below(&format!("{name} |J^2+I|"), s.square_residual, 1e-9);
        c.below(&format!("{name} |J^T J-I|"), s.orthogonality_residual, 1e-9);
        c.below(&format!("{name} fit"), s.fit_residual, 1e-9);
        c.below(&format!("{name} constancy"), s.constancy_residual, 1e-9);
        c.below(&format!("{name} collapse variation"), t.variation, 1e-9);
        c.below(&format!("{name} other = 2g^N"), t.normal_residual, 1e-9);
        c.note(format!("{name} collapsing sign: {}", t.collapsing.as_str()));
    }
    Ok(c)
}

/// Annulus `0.5 ≤ |w| ≤ 2` sampled in polar coordinates.
pub fn annulus_points() -> Vec<(f64, f64)> {
    let (nr, nt) = (16, 48);
    let mut pts = Vec::with_capacity(nr * nt);
    for i in 0..nr {
        let r = 0.5 + 1.5 * i as f64 / (nr - 1) as f64;
        for j in 0..nt {
            let t = 2.0 * PI * j as f64 / nt as f64;
            pts.push((r * t.cos(), r * t.sin()));
        }
    }
    pts
}

fn criterion_8(threads: usize) -> Result<Checks, CliError> {
    let mut c = Checks::new();
    let e = catalog::get("whitney")?;
    let p = e.pair.clone().expect("pair entry");
    let f = e.c2_curve.clone().expect("C2 curve");
    let inv = Inversion::euclidean([0.0; 4], 1.0);
    let pts = annulus_points();
    let per_point = parallel::map_indices(pts.len(), threads, |k| {
        let (u, v) = pts[k];
        let target = moebius::inverted_curve(&f, &inv, u, v)?.value();
        let phi = construct::phi_jets(&p.split(u, v)?, Sign::Minus)?.value();
        let (x, y, z) = catalog::whitney_chart(Complex64::new(u, v));
        let sphere = catalog::whitney_sphere(x, y, z);
        let aligned = catalog::whitney_alignment(&target);
        Ok::<_, Error>((
            math::max_abs(&math::sub(&phi, &target)),
            math::max_abs(&math::sub(&aligned, &sphere)),
        ))
    });
    let (mut recon, mut chart) = (0.0f64, 0.0f64);
    for r in per_point {
        let (a, b) = r?;
        recon = recon.max(a);
        chart = chart.max(b);
    }
    c.below("|g + J_-h - I(f)|", recon, 1e-8);
    c.below("|I(f) - Whitney sphere|", chart, 1e-8);
    c.note(format!("{} annulus points", pts.len()));
    Ok(c)
}

fn criterion_9(threads: usize) -> Result<Checks, CliError> {
    let mut c = Checks::new();
    let e = catalog::get("veronese")?;
    let Some(Immersion::SpaceForm { ambient, eval }) = e.immersion else {
        return Err(Error::Unsupported("veronese has no space-form immersion".into()).into());
    };
    let fg = grid(catalog::veronese_rect(), 24, 24);
    let reports = parallel::map_grid(&fg, threads, |_, (u, v)| moebius::superminimal_test(&eval(u, v)?, ambient));
    let mut rep = moebius::SuperminimalReport::default();
    for r in reports {
        rep = rep.merge(r?);
    }
    c.below("space-form |H|", rep.h_norm, 1e-9);
    c.below("res_orth", rep.res_orth, 1e-8);
    c.below("res_len", rep.res_len, 1e-8);

    let p = e.pair.clone().expect("pair entry");
    let pg = grid(e.rect, 24, 24);
    let metric = parallel::map_grid(&pg, threads, |_, (s, t)| {
        let sp = p.split(s, t)?;
        let (gu, gv) = (sp.g_u.value(), sp.g_v.value());
        // w = log tan(φ/2) + iθ, so dφ/ds = sin φ and E_ss = E_θθ.
        let phi = 2.0 * s.exp().atan();
        let (_, want) = catalog::veronese_metric(phi);
        let got = [math::dot(&gu, &gu), math::dot(&gu, &gv), math::dot(&gv, &gv)];
        let err = (got[0] - want).abs().max(got[1].abs()).max((got[2] - want).abs()) / want;
        Ok::<_, Error>((err, 0.5 * (got[0] + got[2]) / want))
    });
    let (mut worst, mut ratio) = (0.0f64, 0.0f64);
    for m in metric {
        let (err, r) = m?;
        worst = worst.max(err);
        ratio = ratio.max(r);
    }
    c.below("metric relative error", worst, 1e-9);
    c.note(format!("measured/reference metric = {ratio:.12}"));

    let q = moebius::quadric_value(&p, &pg)?;
    c.below("<<G,G>> variation", q.max_deviation, 1e-8);
    c.below("||k| - 4|", (q.mean.norm() - 4.0).abs(), 1e-8);
    c.note(format!("measured k = {:.12} (sign {})", q.mean.re, if q.mean.re < 0.0 { "-" } else { "+" }));
    Ok(c)
}

fn criterion_10() -> Result<Checks, CliError> {
    let mut c = Checks::new();
    // Euclidean: catenoid g, inversion about (0,0,0,5), rotating unit normals.
    let p = pair("catenoid-helicoid")?;
    let inv = Inversion::euclidean([0.0, 0.0, 0.0, 5.0], 1.0);
    let mut euclid: f64 = 0.0;
    for (k, (u, v)) in grid(rect(0.3, 5.5, -1.2, 1.2), 5, 5).points().enumerate() {
        let g = p.split(u, v)?.g;
        let fd = fundamental_data(&g, Ambient::Euclidean)?;
        let t = 0.37 + 1.3 * k as f64;
        let xi = math::add(&math::scale(t.cos(), &fd.n1), &math::scale(t.sin(), &fd.n2));
        euclid = euclid.max(moebius::normal_transform_check(&inv, &g, &xi)?.max());
    }
    c.below("Euclidean normal transform", euclid, 1e-7);

    // Lorentzian: a hyperbolic immersion and the inversion behind the
    // hyperbolic stereographic projection.
    let e = catalog::get("veronese-hyperbolic")?;
    let Some(Immersion::SpaceForm { ambient, eval }) = e.immersion else {
        return Err(Error::Unsupported("veronese-hyperbolic has no immersion".into()).into());
    };
    let linv = SpaceForm::Hyperbolic.projection(1.0);
    let mut lorentz: f64 = 0.0;
    for (u, v) in grid(e.rect, 5, 5).points() {
        let f = eval(u, v)?;
        let fd = fundamental_data(&f, ambient)?;
        let radial = fd.radial.ok_or(Error::FrameUndefined("radial normal"))?;
        for xi in [fd.n1, fd.n2, radial] {
            lorentz = lorentz.max(moebius::normal_transform_check(&linv, &f, &xi)?.max());
        }
    }
    c.below("Lorentzian normal transform", lorentz, 1e-7);

    let mut rt: f64 = 0.0;
    for radius in [1.0, 2.0] {
        for space in [SpaceForm::Sphere, SpaceForm::Hyperbolic] {
            for x in stereo_points(radius) {
                let q = moebius::stereo_from_r4(space, radius, &x)?;
                let back = moebius::stereo_to_r4(space, radius, &q)?;
                rt = rt.max(math::max_abs(&math::sub(&back, &x)) / radius);
            }
        }
    }
    let Some(Immersion::SpaceForm { eval: sphere_eval, .. }) = catalog::get("veronese")?.immersion else {
        return Err(Error::Unsupported("veronese has no immersion".into()).into());
    };
    for (u, v) in grid(catalog::veronese_rect(), 6, 6).points() {
        let f = sphere_eval(u, v)?.value();
        let x = moebius::stereo_to_r4(SpaceForm::Sphere, 1.0, &f)?;
        let back = moebius::stereo_from_r4(SpaceForm::Sphere, 1.0, &x)?;
        rt = rt.max(math::max_abs(&math::sub(&back, &f)));
    }
    c.below("stereo round trip", rt, 1e-11);
    Ok(c)
}

/// Points of R⁴ inside the ball `|x| < 1.8 R`.
pub fn stereo_points(radius: f64) -> Vec<Vector<4>> {
    let ticks = [-0.9, -0.45, 0.0, 0.3, 0.85];
    let mut out = Vec::new();
    for a in ticks {
        for b in ticks {
            for c in ticks {
                for d in ticks {
                    out.push([a * radius, b * radius, c * radius, d * radius]);
                }
            }
        }
    }
    out
}

fn criterion_11() -> Result<Checks, CliError> {
    let mut c = Checks::new();
    for name in ["catenoid-helicoid", "enneper-r3"] {
        let e = catalog::get(name)?;
        let r = minimal::reflection_pair_check(e.pair.as_ref().expect("pair entry"), &grid(e.rect, 32, 32))?;
        c.require(&format!("{name} samples"), r.samples > 0);
        c.below(&format!("{name} |reflect(phi+) - phi-|"), r.max_residual, 1e-10);
        if r.skipped > 0 {
            c.note(format!("{name} skipped {}", r.skipped));
        }
    }
    Ok(c)
}

fn criterion_12(threads: usize) -> Result<Checks, CliError> {
    let mut c = Checks::new();
    let e = catalog::get("catenoid-helicoid")?;
    let p = e.pair.clone().expect("pair entry");
    let g = grid(e.rect, 24, 24);
    for k in 0..16 {
        let fam = minimal::associated_family(&p, k as f64 * PI / 8.0);
        let mut sub = Checks::new();
        superconformal_checks(&mut sub, &format!("theta={k}pi/8"), &fam, &g, threads)?;
        c.passed &= sub.passed;
        if !sub.passed {
            c.details.extend(sub.details.into_iter().filter(|d| d.contains("NOT") || d.contains("failed")));
        }
    }
    c.note("16 angles checked");
    Ok(c)
}

type Eval = Box<dyn Fn(f64, f64) -> Result<JetVec<5>, Error>>;

/// Jet surfaces sampled for the finite-difference cross-check.
fn fd_fixtures() -> Result<Vec<(String, Eval, Rect)>, CliError> {
    let pad = |x: Jet2Vec4| JetVec([x.0[0], x.0[1], x.0[2], x.0[3], Default::default()]);
    let mut out: Vec<(String, Eval, Rect)> = Vec::new();
    for name in catalog::NAMES {
        let e = catalog::get(name)?;
        let r = e.rect;
        if let Some(p) = e.pair.clone() {
            let q = p.clone();
            out.push((format!("{name} g"), Box::new(move |u, v| Ok(pad(q.split(u, v)?.g))), r));
            for sign in Sign::BOTH {
                let q = p.clone();
                out.push((
                    format!("{name} phi_{}", sign.as_str()),
                    Box::new(move |u, v| Ok(pad(construct::phi_jets(&q.split(u, v)?, sign)?))),
                    r,
                ));
            }
        }
        match e.immersion {
            Some(Immersion::R4(f)) => out.push((format!("{name} f"), Box::new(move |u, v| Ok(pad(f(u, v)?))), r)),
            Some(Immersion::SpaceForm { eval, .. }) => {
                let fr = if name.starts_with("veronese") { catalog::veronese_rect() } else { r };
                out.push((format!("{name} f"), Box::new(eval), fr));
            }
            None => {}
        }
    }
    Ok(out)
}

/// Construct configuration used for the determinism check.
pub fn determinism_config(threads: usize) -> RunConfig {
    let mut cfg = RunConfig::new("catenoid-helicoid");
    cfg.grid = [24, 20];
    cfg.sign = SignChoice::Both;
    cfg.projection = Some(crate::config::Projection3::Drop { k: 3 });
    cfg.threads = Some(threads);
    cfg
}

fn criterion_13() -> Result<Checks, CliError> {
    let mut c = Checks::new();
    let mut fd_worst: f64 = 0.0;
    let mut worst_name = String::new();
    let mut count = 0;
    for (name, f, r) in fd_fixtures()? {
        let inner = r.inset(0.1 * (r.u1 - r.u0).min(r.v1 - r.v0))?;
        for p in grid(inner, 3, 3).points() {
            let rep = fd_crosscheck(&f, p, 1e-3)?;
            count += 1;
            if !(rep.residual() <= fd_worst) {
                fd_worst = rep.residual();
                worst_name = name.clone();
            }
        }
    }
    c.below("fd_crosscheck", fd_worst, 1e-6);
    c.note(format!("{count} fd samples, worst on {worst_name}"));

    let reference = commands::construct_artifacts(&determinism_config(1))?.files;
    let mut identical = true;
    for threads in [2, 4, 7] {
        identical &= commands::construct_artifacts(&determinism_config(threads))?.files == reference;
    }
    c.require("byte-identical outputs across thread counts", identical);
    c.note(format!("determinism: {} files compared at 1, 2, 4, 7 threads", reference.len()));

    let failures = golden::run();
    c.require("parser golden suite", failures.is_empty());
    for f in failures {
        c.note(f);
    }
    Ok(c)
}

/// Runs one criterion (1-based).
pub fn run_criterion(id: usize, threads: usize) -> CriterionResult {
    let r = match id {
        1 => criterion_1(threads),
        2 => criterion_2(threads),
        3 => criterion_3(threads),
        4 => criterion_4(),
        5 => criterion_5(threads),
        6 => criterion_6(threads),
        7 => criterion_7(),
        8 => criterion_8(threads),
        9 => criterion_9(threads),
        10 => criterion_10(),
        11 => criterion_11(),
        12 => criterion_12(threads),
        13 => criterion_13(),
        _ => Err(CliError::Usage(format!("no criterion {id}"))),
    };
    let title = TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown");
    match r {
        Ok(c) => CriterionResult { id, title, passed: c.passed, details: c.details },
        Err(e) => CriterionResult {
            id,
            title,
            passed: false,
            details: vec![format!("error: {e}")],
        },
    }
}

pub fn run_all(threads: usize) -> Vec<CriterionResult> {
    (1..=TITLES.len()).map(|id| run_criterion(id, threads)).collect()
}
