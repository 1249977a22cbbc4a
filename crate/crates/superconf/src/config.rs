//! Run configuration: curve selection, sampling, tolerances and I/O targets.

use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use superconf_core::catalog::{self, CatalogEntry};
use superconf_core::construct::Sign;
use superconf_core::expr::parse_curve;
use superconf_core::grid::{Domain, Grid, Rect};
use superconf_core::minimal::{HolomorphicCurve, MinimalPair};
use superconf_core::moebius::SpaceForm;
use superconf_core::Error;

use crate::CliError;

/// Rectangle used for curve expressions given without `--domain`.
pub const DEFAULT_RECT: [f64; 4] = [-1.0, 1.0, -1.0, 1.0];
pub const DEFAULT_GRID: [usize; 2] = [32, 32];

/// Parses `a,b,c,...` into exactly `N` floats.
pub fn parse_floats<const N: usize>(text: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(CliError::Usage(format!(
            "expected {N} comma-separated numbers, got `{text}`"
        )));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| CliError::Usage(format!("`{p}` is not a finite number")))?;
    }
    Ok(out)
}

pub fn parse_grid(text: &str) -> Result<[usize; 2], CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("grid must be `nu,nv` with both at least 2, got `{text}`"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let nu: usize = parts[0].parse().map_err(|_| bad())?;
    let nv: usize = parts[1].parse().map_err(|_| bad())?;
    if nu < 2 || nv < 2 {
        return Err(bad());
    }
    Ok([nu, nv])
}

pub fn parse_rect(text: &str) -> Result<Rect, CliError> {
    let [u0, u1, v0, v1] = parse_floats::<4>(text)?;
    Ok(Rect::new(u0, u1, v0, v1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignChoice {
    Plus,
    Minus,
    Both,
}

impl SignChoice {
    pub fn signs(self) -> Vec<Sign> {
        match self {
            SignChoice::Plus => vec![Sign::Plus],
            SignChoice::Minus => vec![Sign::Minus],
            SignChoice::Both => Sign::BOTH.to_vec(),
        }
    }
}

impl FromStr for SignChoice {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "plus" | "+" => Ok(SignChoice::Plus),
            "minus" | "-" => Ok(SignChoice::Minus),
            "both" => Ok(SignChoice::Both),
            _ => Err(CliError::Usage(format!("sign must be plus, minus or both, got `{s}`"))),
        }
    }
}

pub fn parse_space(s: &str) -> Result<SpaceForm, CliError> {
    match s {
        "sphere" => Ok(SpaceForm::Sphere),
        "hyperbolic" => Ok(SpaceForm::Hyperbolic),
        _ => Err(CliError::Usage(format!("space must be sphere or hyperbolic, got `{s}`"))),
    }
}

/// 3D projection applied to OBJ output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Projection3 {
    /// Drop coordinate `k` (0-based).
    Drop { k: usize },
    /// Central projection from `pole` onto the hyperplane through the origin
    /// orthogonal to it.
    Stereo { pole: [f64; 4] },
}

impl Projection3 {
    pub fn parse(text: &str, pole: [f64; 4]) -> Result<Self, CliError> {
        if text == "stereo" {
            if !(superconf_core::math::norm(&pole) > 0.0) {
                return Err(CliError::Usage("stereographic pole must be nonzero".into()));
            }
            return Ok(Projection3::Stereo { pole });
        }
        if let Some(k) = text.strip_prefix("drop:") {
            return match k.parse::<usize>() {
                Ok(k) if k < 4 => Ok(Projection3::Drop { k }),
                _ => Err(CliError::Usage(format!("drop coordinate must be 0..3, got `{k}`"))),
            };
        }
        Err(CliError::Usage(format!(
            "projection must be `drop:k` or `stereo`, got `{text}`"
        )))
    }
}

/// Check thresholds; every field can be overridden with `--tol name=value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Circularity residuals `res_orth`, `res_len`.
    pub circularity: f64,
    /// `|K + |K_N| − ‖H‖²| / ‖H‖²`.
    pub wintgen: f64,
    /// Central-sphere, conformal-factor and metric-relation residuals.
    pub dual_pair: f64,
    /// Translation invariance `‖φ^{h+w} − φ^h‖ = ‖w‖`.
    pub translation: f64,
    /// Sup error between the two routes of the pair transform.
    pub pair_transform: f64,
    /// Isotropy, conjugacy and minimality of a certified pair.
    pub certify: f64,
    /// Anti-holomorphicity and conformality of the dual curve.
    pub duality: f64,
    /// `‖(f*)* − f‖`.
    pub involution: f64,
    /// Complex structure and collapsing checks on Q₀ curves.
    pub q0: f64,
    /// Mean curvature in the space form.
    pub minimal: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            circularity: 1e-8,
            wintgen: 1e-8,
            dual_pair: 1e-7,
            translation: 1e-9,
            pair_transform: 1e-5,
            certify: 1e-8,
            duality: 1e-8,
            involution: 1e-9,
            q0: 1e-9,
            minimal: 1e-9,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 10] = [
        "circularity",
        "wintgen",
        "dual_pair",
        "translation",
        "pair_transform",
        "certify",
        "duality",
        "involution",
        "q0",
        "minimal",
    ];

    /// Applies `name=value` overrides in order.
    pub fn with_overrides(mut self, items: &[String]) -> Result<Self, CliError> {
        for item in items {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("tolerance must be `name=value`, got `{item}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .ok()
                .filter(|x: &f64| *x > 0.0 && x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("tolerance `{item}` needs a positive value")))?;
            let slot = match name.trim() {
                "circularity" => &mut self.circularity,
                "wintgen" => &mut self.wintgen,
                "dual_pair" => &mut self.dual_pair,
                "translation" => &mut self.translation,
                "pair_transform" => &mut self.pair_transform,
                "certify" => &mut self.certify,
                "duality" => &mut self.duality,
                "involution" => &mut self.involution,
                "q0" => &mut self.q0,
                "minimal" => &mut self.minimal,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown tolerance `{other}`; known: {}",
                        Self::NAMES.join(", ")
                    )))
                }
            };
            *slot = value;
        }
        Ok(self)
    }
}

/// A catalog name or a curve expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveSpec {
    Named(String),
    Expression(String),
}

impl CurveSpec {
    pub fn parse(text: &str) -> Self {
        let t = text.trim();
        if catalog::NAMES.contains(&t) {
            CurveSpec::Named(t.to_string())
        } else {
            CurveSpec::Expression(text.to_string())
        }
    }

    pub fn label(&self) -> &str {
        match self {
            CurveSpec::Named(s) | CurveSpec::Expression(s) => s,
        }
    }
}

/// A curve spec turned into evaluators plus its default rectangle.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub label: String,
    pub definition: String,
    pub entry: Option<CatalogEntry>,
    pub pair: Option<MinimalPair>,
    /// The C² curve attached to the entry, or the expression itself when it
    /// has two components.
    pub c2_curve: Option<HolomorphicCurve>,
    pub rect: Rect,
}

impl Resolved {
    pub fn pair(&self) -> Result<&MinimalPair, CliError> {
        self.pair.as_ref().ok_or_else(|| {
            CliError::Core(Error::Unsupported(format!(
                "`{}` is not a minimal pair",
                self.label
            )))
        })
    }
}

/// Resolves a curve; `domain` replaces the default rectangle and, for
/// expressions, is also the curve domain.
pub fn resolve(spec: &CurveSpec, domain: Option<Rect>) -> Result<Resolved, CliError> {
    match spec {
        CurveSpec::Named(name) => {
            let entry = catalog::get(name)?;
            Ok(Resolved {
                label: name.clone(),
                definition: entry.definition.clone(),
                pair: entry.pair.clone(),
                c2_curve: entry.c2_curve.clone(),
                rect: domain.unwrap_or(entry.rect),
                entry: Some(entry),
            })
        }
        CurveSpec::Expression(text) => {
            let expr = parse_curve(text)?;
            let [u0, u1, v0, v1] = DEFAULT_RECT;
            let rect = match domain {
                Some(r) => r,
                None => Rect::new(u0, u1, v0, v1)?,
            };
            let arity = expr.arity;
            let curve = HolomorphicCurve::new(expr, Domain::rect(rect));
            Ok(Resolved {
                label: text.clone(),
                definition: curve.expr.to_string(),
                entry: None,
                c2_curve: (arity == 2).then(|| curve.clone()),
                pair: Some(MinimalPair::new(curve)),
                rect,
            })
        }
    }
}

/// Options shared by the grid-based commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub curve: CurveSpec,
    pub domain: Option<Rect>,
    pub grid: [usize; 2],
    pub sign: SignChoice,
    pub tolerances: Tolerances,
    /// Associated-family angle applied to the pair before construction.
    pub theta: f64,
    pub center: [f64; 4],
    pub radius: f64,
    pub space: Option<SpaceForm>,
    pub projection: Option<Projection3>,
    pub out_dir: Option<PathBuf>,
    /// Worker threads; `None` reads `SUPERCONF_THREADS`.
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(curve: &str) -> Self {
        RunConfig {
            curve: CurveSpec::parse(curve),
            domain: None,
            grid: DEFAULT_GRID,
            sign: SignChoice::Both,
            tolerances: Tolerances::default(),
            theta: 0.0,
            center: [0.0, 0.0, 0.0, 5.0],
            radius: 1.0,
            space: None,
            projection: None,
            out_dir: None,
            threads: None,
        }
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        resolve(&self.curve, self.domain)
    }

    pub fn grid_over(&self, rect: Rect) -> Result<Grid, CliError> {
        Ok(Grid::new(rect, self.grid[0], self.grid[1])?)
    }

    pub fn threads(&self) -> usize {
        self.threads.unwrap_or_else(crate::parallel::thread_limit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_lists() {
        assert_eq!(parse_floats::<4>("0.2, 6.08,-1.5,1.5").unwrap(), [0.2, 6.08, -1.5, 1.5]);
        assert!(parse_floats::<4>("1,2,3").is_err());
        assert!(parse_floats::<2>("1,nan").is_err());
        assert!(parse_rect("1,0,0,1").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("64,32").unwrap(), [64, 32]);
        assert!(parse_grid("1,5").is_err());
        assert!(parse_grid("4").is_err());
    }

    #[test]
    fn projections() {
        let pole = [0.0, 0.0, 0.0, 1.0];
        assert_eq!(Projection3::parse("drop:3", pole).unwrap(), Projection3::Drop { k: 3 });
        assert!(Projection3::parse("drop:4", pole).is_err());
        assert_eq!(Projection3::parse("stereo", pole).unwrap(), Projection3::Stereo { pole });
        assert!(Projection3::parse("stereo", [0.0; 4]).is_err());
        assert!(Projection3::parse("ortho", pole).is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let t = Tolerances::default()
            .with_overrides(&["circularity=1e-6".into(), "q0 = 2e-9".into()])
            .unwrap();
        assert_eq!(t.circularity, 1e-6);
        assert_eq!(t.q0, 2e-9);
        assert!(Tolerances::default().with_overrides(&["bogus=1".into()]).is_err());
        assert!(Tolerances::default().with_overrides(&["wintgen=-1".into()]).is_err());
    }

    #[test]
    fn curve_specs() {
        assert_eq!(CurveSpec::parse("whitney"), CurveSpec::Named("whitney".into()));
        let r = resolve(&CurveSpec::parse("(z, 1/z)"), None).unwrap();
        assert!(r.c2_curve.is_some());
        assert_eq!(r.definition, "(z, (1.0/z))");
        assert!(resolve(&CurveSpec::parse("(z, "), None).is_err());
    }
}
