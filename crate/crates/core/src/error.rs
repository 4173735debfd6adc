use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("series is not invertible: lowest term must be the constant +1 or -1")]
    NotInvertible,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("summation does not terminate: {0}")]
    NonTerminating(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
