use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::expr::BuildError;

/// What every command prints: the command echo, the ring expression, the
/// payload fields and an optional timestamp (unix seconds).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(flatten)]
    pub payload: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

/// A report, its plain-text rendering and whether all checks passed.
pub struct Output {
    pub report: Report,
    pub text: Vec<String>,
    pub ok: bool,
}

impl Output {
    pub fn new(command: impl Into<String>, ring: Option<String>) -> Self {
        Self {
            report: Report {
                command: command.into(),
                ring,
                payload: Map::new(),
                timestamp: None,
            },
            text: Vec::new(),
            ok: true,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.report.payload.insert(key.to_string(), value);
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Lib(#[from] homweight::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use homweight::Error as E;
        let lib = match self {
            CliError::Usage(_) => return 2,
            CliError::Build(BuildError::Ring(e)) | CliError::Lib(e) => e,
            CliError::Build(_) => return 2,
        };
        match lib {
            E::ResourceLimit { .. } => 3,
            E::InvalidParameter(_) | E::InvalidRing(_) => 2,
            E::NotFrobenius(_) | E::InternalInconsistency(_) => 1,
        }
    }
}
