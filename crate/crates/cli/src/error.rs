use std::path::PathBuf;

use search_paths::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("numerical failure: {0}")]
    Numerical(CoreError),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 0 is success; 1 usage, 2 numerical failure, 3 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 1,
            Self::Numerical(_) => 2,
            Self::Io { .. } => 3,
        }
    }
}

/// Integration and eigen-solver failures are numerical; everything else
/// traces back to a bad argument.
impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NormDrift { .. }
            | CoreError::NonConvergence { .. }
            | CoreError::NotHermitian { .. } => Self::Numerical(e),
            other => Self::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
