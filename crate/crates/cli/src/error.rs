use mgt_core::Error;
use thiserror::Error as ThisError;

/// Failures mapped onto process exit codes.
#[derive(Debug, ThisError)]
pub enum CliError {
    /// Verification or computation failed (exit 1).
    #[error("{0}")]
    Failed(String),
    /// Bad arguments or malformed input (exit 2).
    #[error("{0}")]
    Usage(String),
    /// Reading or writing a file failed (exit 3).
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => CliError::Io(e.to_string()),
            Error::Parse(_)
            | Error::Input(_)
            | Error::Dimension(_)
            | Error::Size(_)
            | Error::NotHermitian { .. }
            | Error::NonFinite { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}
