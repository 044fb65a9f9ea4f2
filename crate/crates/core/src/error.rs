use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("rank must be positive")]
    ZeroRank,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("empty input")]
    EmptyInput,

    #[error("zero charge has no phase")]
    ZeroCharge,

    #[error("charge {0} lies outside the phase strip (0, 1]")]
    OutsideStrip(String),

    #[error("zero class")]
    ZeroClass,

    #[error("parse error: {0}")]
    Parse(String),

    /// A mathematically impossible outcome; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
