use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the harness and the command-line tool.
#[derive(Debug, Error)]
pub enum HarnessError {
    /// Bad flags, missing files named on the command line, invalid config.
    #[error("{0}")]
    Usage(String),
    /// Malformed input data; `line` is 1-based.
    #[error("{path}:{line}: {message}")]
    Data {
        path: String,
        line: u64,
        message: String,
    },
    #[error(transparent)]
    Core(#[from] moind_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Other(String),
}

impl HarnessError {
    /// Process exit status: 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

pub(crate) fn usage(msg: impl Into<String>) -> HarnessError {
    HarnessError::Usage(msg.into())
}
