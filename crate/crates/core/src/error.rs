use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position} in `{input}`: {message}")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(input: &str, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid group descriptor: {0}")]
    InvalidGroup(String),
    #[error("element does not belong to group {group}")]
    GroupMismatch { group: String },
    #[error("element cap of {limit} exceeded")]
    CapExceeded { limit: usize },
    #[error("unsupported embedding: {0}")]
    UnsupportedEmbedding(String),
    #[error("not a direct product with the required factor: {0}")]
    NotAProduct(String),
    #[error("cannot evaluate test function: {0}")]
    Evaluation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("freeness not established: {0}")]
    NotFree(String),
    #[error("invariance check failed: {0}")]
    Invariance(String),
    #[error("malformed certificate: {0}")]
    Certificate(String),
}
