use thiserror::Error;

/// Errors produced by every fallible operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid degree {0}: must be between 1 and 255")]
    InvalidDegree(usize),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("complement requires rank 2, got rank {0}")]
    NotRankTwo(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown letter {0:?}")]
    UnknownLetter(String),

    #[error("alphabets differ: {0:?} vs {1:?}")]
    AlphabetMismatch(Vec<String>, Vec<String>),

    #[error("operation requires a unary alphabet, got {0} letters")]
    NotUnary(usize),

    #[error("invalid automaton: {0}")]
    InvalidDfa(String),

    #[error("no generators given")]
    NoGenerators,

    #[error("monoid exceeds element cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{what} is over budget: {detail}")]
    OverBudget { what: String, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
