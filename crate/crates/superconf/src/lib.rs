//! Command-line driver for `superconf-core`: run configuration, parallel grid
//! evaluation, file formats, the command implementations and the acceptance
//! suite behind `superconf selftest`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod acceptance;
pub mod cli;
pub mod commands;
pub mod config;
pub mod export;
pub mod golden;
pub mod parallel;

use std::path::Path;

use serde_json::json;
use superconf_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Bad input, parse error, or a theorem hypothesis not met.
    pub const PRECONDITION: i32 = 2;
    /// A numerical failure or a failed check.
    pub const NUMERICAL: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed input: {0}")]
    Format(String),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_precondition() => exit::PRECONDITION,
            CliError::Core(_) => exit::NUMERICAL,
            CliError::Usage(_) | CliError::Format(_) => exit::PRECONDITION,
            CliError::Io { .. } => exit::IO,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Format(_) => "format",
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> serde_json::Value {
        let mut body = json!({
            "kind": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let CliError::Core(Error::Syntax { line, column, expected, .. }) = self {
            body["line"] = json!(line);
            body["column"] = json!(column);
            body["expected"] = json!(expected);
        }
        json!({ "error": body })
    }
}
