use thiserror::Error;

/// Errors raised by field construction, counting kernels and bound evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a power of the characteristic {1}")]
    NotPrimePower(String, u64),

    #[error("{what} needs {needed} but the configured limit is {limit}")]
    LimitExceeded {
        what: &'static str,
        needed: String,
        limit: u64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A division that must be exact left a remainder. This is a bug, never a
    /// user error.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("hypothesis not satisfied: {0}")]
    HypothesisViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
