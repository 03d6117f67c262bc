//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by dataset validation, solvers and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid caller-supplied data (empty dataset, nonpositive probe, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// Two quantities that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// A precondition documented on the operation was violated.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Numerical failure (singular matrix, solver breakdown).
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Malformed CSV input; row is 1-based including the header, column is 1-based.
    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
