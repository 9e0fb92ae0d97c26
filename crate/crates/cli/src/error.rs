use crw_core::{OracleError, ScatteringError, SweepError, Violation};
use thiserror::Error;

/// Exit codes: 0 success, 1 verification failed, 2 domain error, 3 input
/// error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },
    #[error("invalid cluster: {}", join(violations))]
    Validation { violations: Vec<Violation> },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Sweep(SweepError),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::InvalidThreshold(_)
            | SweepError::TooFewPoints(_)
            | SweepError::MissingReference { .. } => CliError::Usage(e.to_string()),
            other => CliError::Sweep(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. }
            | CliError::Parse { .. }
            | CliError::Validation { .. }
            | CliError::Usage(_) => EXIT_INPUT,
            CliError::Scattering(_) | CliError::Oracle(_) | CliError::Sweep(_) => EXIT_DOMAIN,
        }
    }
}
