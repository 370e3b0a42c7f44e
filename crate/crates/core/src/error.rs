use thiserror::Error;

use crate::ring::RingError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("{0} is not a root word")]
    NotRootWord(String),
    #[error("{0} is a root word")]
    IsRootWord(String),
    #[error("the zero vector is not allowed here")]
    ZeroVector,
    #[error("enumerating {needed} items exceeds the {what} budget of {cap}")]
    BudgetExceeded { what: &'static str, needed: u128, cap: u64 },
    #[error("generator matrix has McCoy rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0}")]
    Dimension(String),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
