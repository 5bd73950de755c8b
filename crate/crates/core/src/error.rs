use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification of failures, used by callers that need to
/// distinguish bad input from missing capability from a broken invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Capability,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(
        "model has a reducible fibre ({fiber}); naive counting would not give the smooth surface"
    )]
    ReducibleFiber { fiber: String },

    #[error("inconsistent traces: a_0 = {found}, expected 2q = {expected}")]
    InconsistentTrace { found: String, expected: u64 },

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotPrime(_) | Error::InvalidInput(_) => ErrorKind::Usage,
            Error::Unsupported(_) | Error::ReducibleFiber { .. } => ErrorKind::Capability,
            Error::InconsistentTrace { .. } | Error::NonIntegral(_) | Error::Inconsistent(_) => {
                ErrorKind::Internal
            }
        }
    }
}
