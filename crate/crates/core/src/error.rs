use thiserror::Error;

/// Errors raised by the library.
///
/// `Schema` covers malformed or ill-typed input. `Precondition` covers
/// well-formed input that violates a mathematical requirement of the
/// operation (non-pointed semigroup, non-local order, weight outside the
/// cone, ...).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Schema(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("computation limit reached: {0}")]
    Limit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Schema(msg.into()))
}
