//! Scenario files, reproduction tables and the artifacts they produce.
//!
//! Exit codes: `0` success, `1` schema or input error, `2` domain error
//! raised by the calculus, `3` a reproduction check failed.

mod format;
mod reproduce;
mod scenario;

use std::path::PathBuf;

use thiserror::Error;

pub use format::{csv_number, CsvTable};
pub use reproduce::{reproduce, Check, CheckStatus, Report, TABLE_IDS};
pub use scenario::{run_scenario, run_scenario_file, Kind, Scenario};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Domain(#[from] crate::Error),
    #[error("{0}")]
    Io(String),
    #[error("{failed} reproduction check(s) failed")]
    ChecksFailed { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Io(_) => 1,
            CliError::Domain(_) => 2,
            CliError::ChecksFailed { .. } => 3,
        }
    }
}

/// A result artifact, rendered deterministically.
#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Json(serde_json::Value),
    Csv(CsvTable),
}

impl Artifact {
    pub fn render(&self) -> String {
        match self {
            Artifact::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
                s.push('\n');
                s
            }
            Artifact::Csv(t) => t.render(),
        }
    }
}

/// What a `run` produced and where it should go.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub artifact: Artifact,
    pub path: Option<PathBuf>,
}

/// Overrides given on the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}
