use thiserror::Error;

/// Errors raised by the exact-invariant routines.
///
/// `HypothesisViolated` is kept apart from `InvalidInput`: the former means the
/// caller asked for a quantity outside the range where its formula is known to
/// hold, the latter is a plain precondition failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
