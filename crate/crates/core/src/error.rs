use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library and the command line front end.
///
/// `Usage` covers violated preconditions (bad dimensions, sizes, parameters);
/// the CLI maps it to exit code 2. Everything else is a runtime failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{key}: {message}")]
    Usage { key: String, message: String },

    #[error("precision exhausted after {reached} partial quotients (requested {requested})")]
    Precision { reached: usize, requested: usize },

    #[error("refusing {what}: {limit}")]
    Guard { what: String, limit: String },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn usage(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Usage {
            key: key.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Usage { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
