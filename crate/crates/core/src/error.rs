use thiserror::Error;

/// Every fallible operation in the crate reports through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisError {
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("quotient mismatch: {0}")]
    QuotientMismatch(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("unknown reference: {0}")]
    Unresolved(String),
    #[error("missing data: {0}")]
    Missing(String),
    #[error("braid word is not pure")]
    NotPure,
    #[error("search refused: estimated {estimate} candidates exceeds limit {limit}")]
    TooLarge { estimate: u128, limit: u128 },
    #[error("certificate failure: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, HeisError>;

pub(crate) fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(HeisError::Parse { pos, msg: msg.into() })
}
