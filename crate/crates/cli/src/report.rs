//! Machine-readable reports.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use pointwise::logic::CODING_VERSION;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Semantic(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Semantic(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

pub fn semantic(e: impl std::fmt::Display) -> CliError {
    CliError::Semantic(e.to_string())
}

pub fn parse_error(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct Versions {
    pub tool: String,
    pub coding: String,
    /// `name version` of every theory the command consulted.
    pub theories: Vec<String>,
}

/// Deterministic cost of the computation, in the command's own unit.
#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub unit: String,
    pub amount: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub version: Versions,
    pub results: Value,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str, inputs: &Value, results: impl Serialize, theories: Vec<String>, unit: &str, amount: u64) -> Report {
        let digest = Sha256::digest(serde_json::to_vec(inputs).expect("json value"));
        Report {
            command: command.to_string(),
            inputs_digest: hex::encode(digest),
            version: Versions { tool: env!("CARGO_PKG_VERSION").to_string(), coding: CODING_VERSION.to_string(), theories },
            results: serde_json::to_value(results).expect("serialisable results"),
            timing: Timing { unit: unit.to_string(), amount },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serialisable report");
        s.push('\n');
        s
    }
}
