use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("coefficient overflow")]
    Overflow,

    #[error("variable index {index} outside 1..={nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("{nvars} variables exceeds the exhaustive-count limit of {max}")]
    Capacity { nvars: usize, max: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed signature: {0}")]
    MalformedSignature(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
