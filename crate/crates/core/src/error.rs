use thiserror::Error;

/// Errors reported by graph construction, validation and spectral routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unsupported construction: {0}")]
    UnsupportedConstruction(String),

    #[error("validation failure: {0}")]
    ValidationFailure(String),

    #[error("precondition violation: {0}")]
    PreconditionViolation(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
