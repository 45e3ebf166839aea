use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector {index} does not have unit norm")]
    NotUnitNorm { index: usize },

    #[error("wrong number of vectors: expected {expected}, found {found}")]
    WrongCount { expected: usize, found: usize },

    #[error("empty configuration")]
    EmptyConfig,

    #[error("diagonalization certificate rejected")]
    CertificateRejected,

    #[error("degenerate parameter: 1 + s^2 vanishes")]
    DegenerateParameter,

    #[error("invalid arguments: {0}")]
    InvalidArgs(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
