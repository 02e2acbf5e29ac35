//! Errors of the file layer and the command line, with their exit codes.

use std::io;
use std::path::PathBuf;

use netmaint_core::Error as CoreError;

/// Process exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Unreadable files, malformed input, internal failures.
pub const EXIT_FAILURE: i32 = 1;
/// The instance or a schedule failed validation.
pub const EXIT_VALIDATION: i32 = 2;
/// An exhaustive search ran out of budget.
pub const EXIT_BUDGET: i32 = 3;
/// The instance does not meet the chosen solver's precondition.
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed {what}: {message}")]
    Format { what: &'static str, message: String },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn format(what: &'static str, message: impl Into<String>) -> Self {
        CliError::Format {
            what,
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::InvalidInstance(_) | CoreError::InfeasibleSchedule(_)) => EXIT_VALIDATION,
            CliError::Core(CoreError::BudgetExceeded { .. }) => EXIT_BUDGET,
            CliError::Core(CoreError::Precondition(_)) => EXIT_PRECONDITION,
            _ => EXIT_FAILURE,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
