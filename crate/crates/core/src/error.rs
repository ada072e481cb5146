use thiserror::Error;

/// Errors raised by the engine.
///
/// Every variant maps onto one failure class so front ends can translate
/// them into distinct exit statuses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside its admissible range.
    #[error("invalid configuration: {field}: {reason}")]
    Config { field: String, reason: String },

    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A hypothesis an operation relies on does not hold (e.g. θ ≤ 2 for the
    /// per-component scaling model).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A numerical routine failed to converge or lost all accuracy.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Too few usable observations to produce a result.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Inputs that do not belong together were combined.
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
