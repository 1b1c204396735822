//! Error taxonomy shared by all modules.
//!
//! The split mirrors the CLI exit codes: `Domain` is a caller error (bad
//! arguments, violated precondition), `Integrity` is a verified mathematical
//! property failing (a bug or a failed certificate), `Resource` means a
//! computation was refused because it would blow a configured budget.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Precondition violation: the request is outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An internal consistency check failed; indicates a defect, not bad input.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// The computation would exceed a configured budget.
    #[error("resource budget exceeded: need {needed} {unit}, budget {budget} {unit}")]
    Resource {
        needed: u64,
        budget: u64,
        unit: &'static str,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }
}
