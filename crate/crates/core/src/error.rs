use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in Q(v)")]
    DivisionByZero,

    #[error("pole: denominator vanishes at v = {0}")]
    Pole(String),

    #[error("specialization point must be a positive rational different from 1, got {0}")]
    BadSpecialization(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported algebra `{0}` (supported: A1, A2, A3, B2)")]
    UnsupportedAlgebra(String),

    #[error("weight {weight} has rank {got}, algebra has rank {expected}")]
    RankMismatch {
        weight: String,
        got: usize,
        expected: usize,
    },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("gauss binomial [{m} choose {t}] requested outside 0 <= t <= m")]
    BinomialRange { m: i64, t: i64 },

    #[error("operands belong to different algebras or subalgebras")]
    AlgebraMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("cache integrity failure: {0}")]
    Integrity(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
