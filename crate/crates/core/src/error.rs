use thiserror::Error;

/// Errors produced by the model, the instance reader and the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LsapError {
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("agent {agent} already holds job {job}; nothing to exchange")]
    NoOpExchange { agent: usize, job: usize },

    #[error("index {index} out of range for size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("brute force refused: n = {n} exceeds the limit of {limit}")]
    SizeGuard { n: usize, limit: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for LsapError {
    fn from(err: std::io::Error) -> Self {
        LsapError::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LsapError>;
