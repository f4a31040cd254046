use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the simulator and its experiment front-end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error in `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("malformed configuration file {path}: {message}")]
    Syntax { path: PathBuf, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("state error: {0}")]
    State(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status for the command-line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Syntax { .. } => 2,
            Error::Domain(_) | Error::State(_) | Error::Invariant(_) => 3,
            Error::Io { .. } => 4,
        }
    }
}
