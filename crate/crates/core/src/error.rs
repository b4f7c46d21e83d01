//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite vector component at index {index}")]
    NonFinite { index: usize },

    #[error("{what} must not be empty")]
    Empty { what: &'static str },

    #[error("{solver} did not converge after {iterations} iterations (residual {residual:e}, tolerance {tol:e})")]
    NoConvergence {
        solver: &'static str,
        iterations: usize,
        residual: f64,
        tol: f64,
    },

    #[error("certificate `{certificate}` rejected for `{operator}`: {reason}")]
    CertificateRejected {
        operator: String,
        certificate: &'static str,
        reason: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
