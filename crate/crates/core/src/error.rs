use thiserror::Error;

/// Errors raised by the matrix constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {lhs:?} vs {rhs:?}")]
    DimensionMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("invalid cyclotomic order {0}")]
    InvalidOrder(u64),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("degenerate parameter: {0}")]
    Degenerate(String),

    #[error("refusing to build {what}: size {size} exceeds bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
