use thiserror::Error;

/// Process exit statuses.
pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    /// Malformed command line or mismatched inputs.
    pub const USAGE: i32 = 2;
    /// Scenario or argument outside its admissible range.
    pub const VALIDATION: i32 = 3;
    pub const NUMERICAL: i32 = 4;
    pub const INSUFFICIENT_DATA: i32 = 5;
    /// Closed form and oracle disagree beyond the tolerance.
    pub const CHECK_FAILED: i32 = 6;
    pub const IO: i32 = 7;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed scenario: {0}")]
    Parse(String),

    #[error("invalid scenario: {field}: {reason}")]
    Invalid { field: String, reason: String },

    #[error(transparent)]
    Engine(#[from] exitrate::Error),

    #[error("malformed results file: {0}")]
    Report(String),

    #[error("oracle check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use exitrate::Error as E;
        match self {
            CliError::Io { .. } => exit_code::IO,
            CliError::Parse(_) | CliError::Invalid { .. } | CliError::Report(_) => exit_code::VALIDATION,
            CliError::Engine(e) => match e {
                E::Config { .. } | E::Domain(_) | E::Precondition(_) => exit_code::VALIDATION,
                E::Numerical(_) => exit_code::NUMERICAL,
                E::InsufficientData(_) => exit_code::INSUFFICIENT_DATA,
                E::Usage(_) => exit_code::USAGE,
            },
            CliError::CheckFailed(_) => exit_code::CHECK_FAILED,
        }
    }
}
