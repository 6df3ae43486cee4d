//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configurable resource cap (qubit count, enumeration size) was exceeded.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// A text input (schedule file, problem file, records file) failed to parse.
    /// `line` is 1-based.
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },

    /// A probability outside the domain of the Gibbs ratio (zero or negative).
    #[error("domain error: {0}")]
    Domain(String),

    /// The two energies of a Gibbs ratio pair are equal within the tie
    /// epsilon; the pair carries no temperature information.
    #[error("degenerate pair: energies equal within tie epsilon")]
    DegeneratePair,

    /// Inverse-temperature estimation could not produce a value.
    #[error("estimation failure: {0}")]
    EstimationFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
}
