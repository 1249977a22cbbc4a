use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the pipeline.
///
/// Variants fall in two groups: precondition failures (bad input, parse errors,
/// hypotheses of a theorem not met) and numerical failures (a point where the
/// geometry degenerates). [`Error::is_precondition`] tells them apart.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: expected {}, found {found}", expected.join(" | "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("evaluation error: {kind} in `{subexpr}` (column {column})")]
    Evaluation {
        kind: &'static str,
        subexpr: String,
        column: usize,
    },
    #[error("point ({u}, {v}) lies outside the curve domain")]
    Domain { u: f64, v: f64 },
    #[error("degenerate jet: denominator magnitude {magnitude:e} below the division floor")]
    DegenerateJet { magnitude: f64 },
    #[error("singular sample: first-form determinant {det:e}")]
    SingularSample { det: f64 },
    #[error("adapted frame undefined: {0}")]
    FrameUndefined(&'static str),
    #[error("construction frame degenerate: r = {r:e}")]
    FrameDegenerate { r: f64 },
    #[error("inversion singular: <x-P0, x-P0> = {denom:e}")]
    InversionSingular { denom: f64 },
    #[error("point on the null quadric: <<Z,Z>> magnitude {magnitude:e}")]
    QuadricSingular { magnitude: f64 },
    #[error("duality singular: normal component of the position vector has norm {norm:e}")]
    DualitySingular { norm: f64 },
    #[error("projection error: {0}")]
    Projection(String),
    #[error("holomorphic representative is not in Q0: max |<<G,G>>| = {max_value:e}")]
    NotQ0 { max_value: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown catalog entry `{0}`")]
    NotFound(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::Domain { .. }
                | Error::Precondition(_)
                | Error::NotQ0 { .. }
                | Error::NotFound(_)
                | Error::Unsupported(_)
                | Error::Projection(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::Evaluation { .. } => "evaluation",
            Error::Domain { .. } => "domain",
            Error::DegenerateJet { .. } => "degenerate-jet",
            Error::SingularSample { .. } => "singular-sample",
            Error::FrameUndefined(_) => "frame-undefined",
            Error::FrameDegenerate { .. } => "frame-degenerate",
            Error::InversionSingular { .. } => "inversion-singular",
            Error::QuadricSingular { .. } => "quadric-singular",
            Error::DualitySingular { .. } => "duality-singular",
            Error::Projection(_) => "projection",
            Error::NotQ0 { .. } => "not-q0",
            Error::Precondition(_) => "precondition",
            Error::NotFound(_) => "not-found",
            Error::Unsupported(_) => "unsupported",
        }
    }
}
