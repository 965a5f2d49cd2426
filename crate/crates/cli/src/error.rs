use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or bad input values; exit status 2.
    #[error("{0}")]
    Usage(String),
    /// An input file that exists but cannot be understood; exit status 2.
    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },
    /// Reading or writing failed; exit status 1.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } => 2,
            CliError::Io { .. } => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub(crate) fn input(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Input {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl From<qappell_core::Error> for CliError {
    fn from(e: qappell_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
