use thiserror::Error;

/// Errors raised by solvers and generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance beyond enumeration cap: {0}")]
    CapExceeded(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
