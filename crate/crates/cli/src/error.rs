use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced by the command-line driver, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: malformed files, invalid parameters, violated invariants.
    #[error("{0}")]
    Validation(String),
    /// A computation failed or a verification did not pass.
    #[error("{0}")]
    Numerical(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => 2,
            CliError::Validation(_) | CliError::Io { .. } => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<multipoint_core::Error> for CliError {
    fn from(e: multipoint_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}
