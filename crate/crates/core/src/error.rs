use thiserror::Error;

/// Errors raised by constructions. Failed diagram checks are not errors;
/// they are recorded as data in a [`crate::report::Report`].
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("object mismatch: {0}")]
    Mismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invalid(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("bound exceeded: {0}")]
    Bound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
