use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the approximation toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller supplied parameters outside the documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An iterative routine failed to converge or produced a non-finite value.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn failure<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::NumericalFailure(msg.into()))
}
