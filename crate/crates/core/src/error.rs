use thiserror::Error;

/// Errors raised by the library. `Validation` and `Parse` describe bad
/// input; the remaining variants are computation-level verdicts.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a point-count sequence of a curve: {0}")]
    NotACurve(String),
    #[error("no curve with these counts: {0}")]
    NotWeil(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("retry budget exhausted after {0} attempts")]
    RetryExhausted(u64),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by malformed requests rather than by the
    /// mathematics of a well-formed one.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Validation(_) | Error::Parse(_) | Error::SizeLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
