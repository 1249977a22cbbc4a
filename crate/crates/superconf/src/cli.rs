//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::acceptance;
use crate::commands::{self, Outcome};
use crate::config::{self, CurveSpec, Projection3, RunConfig, Tolerances};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "superconf",
    version,
    about = "Superconformal surfaces in R4 from conjugate minimal surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List or describe the built-in fixtures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Certify that a holomorphic curve gives a conjugate minimal pair.
    Certify(GridArgs),
    /// Build phi+/- over a grid and write CSV, 4D mesh JSON, OBJ and a summary.
    Construct(ConstructArgs),
    /// Superconformality and dual-pair checks of phi+/-.
    Verify(VerifyArgs),
    /// Compare the inverted surface's pair with the holomorphic inversion of G.
    Invert(InvertArgs),
    /// Duality checks for a holomorphic curve in C2.
    Dual(GridArgs),
    /// Classify <<G,G>> and run the matching quadric checks.
    Quadric(GridArgs),
    /// Stereographic projection and superminimality in S4 or H4.
    Project(ProjectArgs),
    /// Run the full acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Show {
        name: String,
        /// Write the entry's curve expression to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Catalog name or curve expression such as "(z, 1/z)".
    #[arg(long)]
    pub curve: String,
    /// Parameter rectangle `u0,u1,v0,v1`.
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    /// Grid size `nu,nv`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol")]
    pub tol: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SignArgs {
    /// plus, minus or both.
    #[arg(long, default_value = "both")]
    pub sign: String,
    /// Associated-family angle applied to the pair.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub sign: SignArgs,
    /// Output directory.
    #[arg(long, default_value = "superconf-out")]
    pub out: PathBuf,
    /// OBJ projection: `drop:k` or `stereo`.
    #[arg(long)]
    pub project: Option<String>,
    /// Pole `x0,x1,x2,x3` for `--project stereo`.
    #[arg(long, default_value = "0,0,0,1", allow_hyphen_values = true)]
    pub pole: String,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub sign: SignArgs,
}

#[derive(Debug, Clone, Args)]
pub struct InvertArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Inversion center `x0,x1,x2,x3`.
    #[arg(long, default_value = "0,0,0,5", allow_hyphen_values = true)]
    pub center: String,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value = "both")]
    pub sign: String,
}

#[derive(Debug, Clone, Args)]
pub struct ProjectArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// sphere or hyperbolic; read off from <<G,G>> when omitted.
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    /// Run only these criteria (1-13); repeatable.
    #[arg(long = "criterion")]
    pub criteria: Vec<usize>,
}

fn base_config(a: &GridArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::new(&a.curve);
    cfg.curve = CurveSpec::parse(&a.curve);
    if let Some(d) = &a.domain {
        cfg.domain = Some(config::parse_rect(d)?);
    }
    if let Some(g) = &a.grid {
        cfg.grid = config::parse_grid(g)?;
    }
    cfg.tolerances = Tolerances::default().with_overrides(&a.tol)?;
    Ok(cfg)
}

fn with_sign(mut cfg: RunConfig, s: &SignArgs) -> Result<RunConfig, CliError> {
    cfg.sign = s.sign.parse()?;
    if !s.theta.is_finite() {
        return Err(CliError::Usage("theta must be finite".into()));
    }
    cfg.theta = s.theta;
    Ok(cfg)
}

/// Runs a parsed command. Text lines (selftest) are returned alongside the
/// JSON outcome.
pub fn dispatch(cmd: &Command) -> Result<(Outcome, Vec<String>), CliError> {
    let out = match cmd {
        Command::Catalog { action: CatalogAction::List } => commands::catalog_list(),
        Command::Catalog { action: CatalogAction::Show { name, export } } => {
            commands::catalog_show(name, export.as_deref())?
        }
        Command::Certify(a) => commands::certify(&base_config(a)?)?,
        Command::Construct(a) => {
            let mut cfg = with_sign(base_config(&a.grid)?, &a.sign)?;
            let pole = config::parse_floats::<4>(&a.pole)?;
            cfg.projection = a.project.as_deref().map(|p| Projection3::parse(p, pole)).transpose()?;
            cfg.out_dir = Some(a.out.clone());
            commands::construct(&cfg)?
        }
        Command::Verify(a) => commands::verify(&with_sign(base_config(&a.grid)?, &a.sign)?)?,
        Command::Invert(a) => {
            let mut cfg = base_config(&a.grid)?;
            cfg.center = config::parse_floats::<4>(&a.center)?;
            if !(a.radius > 0.0 && a.radius.is_finite()) {
                return Err(CliError::Usage("radius must be positive".into()));
            }
            cfg.radius = a.radius;
            cfg.sign = a.sign.parse()?;
            if a.grid.grid.is_none() {
                cfg.grid = [20, 20];
            }
            commands::invert(&cfg)?
        }
        Command::Dual(a) => commands::dual(&base_config(a)?)?,
        Command::Quadric(a) => commands::quadric(&base_config(a)?)?,
        Command::Project(a) => {
            let mut cfg = base_config(&a.grid)?;
            cfg.space = a.space.as_deref().map(config::parse_space).transpose()?;
            if !(a.radius > 0.0 && a.radius.is_finite()) {
                return Err(CliError::Usage("radius must be positive".into()));
            }
            cfg.radius = a.radius;
            commands::project(&cfg)?
        }
        Command::Selftest(a) => return Ok(selftest(&a.criteria)),
    };
    Ok((out, Vec::new()))
}

pub fn selftest(only: &[usize]) -> (Outcome, Vec<String>) {
    let threads = crate::parallel::thread_limit();
    let ids: Vec<usize> = if only.is_empty() { (1..=acceptance::TITLES.len()).collect() } else { only.to_vec() };
    let results: Vec<_> = ids.iter().map(|&id| acceptance::run_criterion(id, threads)).collect();
    let lines = results.iter().map(ToString::to_string).collect();
    let passed = results.iter().all(|r| r.passed);
    let summary = json!({
        "command": "selftest",
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "title": r.title,
            "passed": r.passed,
            "details": r.details,
        })).collect::<Vec<_>>(),
        "passed": passed,
    });
    (Outcome { summary, passed }, lines)
}
