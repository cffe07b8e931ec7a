use num_bigint::BigUint;
use thiserror::Error;

/// Why a bump could not be applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Blocker {
    /// The passed block would run off the end of the word.
    Boundary,
    /// A digit in the passed block is not smaller than the run value.
    NotSmaller,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("rank {rank} out of range 1..={len}")]
    RankOutOfRange { rank: usize, len: usize },

    #[error("bump not applicable: blocked at position {position} ({blocker:?})")]
    BumpNotApplicable { position: usize, blocker: Blocker },

    #[error("size limit exceeded: {count} words exceeds the cap of {cap}")]
    SizeLimit { count: BigUint, cap: usize },

    #[error("start word {0} is not in the language")]
    InvalidStart(String),

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    #[error("{0}")]
    Domain(String),

    #[error("word {0} is not in the parent language")]
    NotInParentLanguage(String),

    #[error("no closed-form count for {0}")]
    FormulaUnavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
