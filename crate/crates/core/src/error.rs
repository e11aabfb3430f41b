use std::io;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested object cannot be built from otherwise valid inputs.
    #[error("construction error: {0}")]
    Construction(String),

    /// Input exceeds what an exponential-time routine accepts.
    #[error("size error: {0}")]
    Size(String),

    /// Line-oriented text input (DIMACS, bounds CSV) was malformed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A JSON document did not match its schema.
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
