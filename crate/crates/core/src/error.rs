use thiserror::Error;

/// Errors produced while building, encoding, decoding or querying.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty array: at least one element is required")]
    EmptyArray,

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parse error on line {line}: invalid integer {token:?}")]
    Parse { line: usize, token: String },

    #[error("precondition violated at index {index}: {reason}")]
    Precondition { index: usize, reason: String },

    #[error("corrupt encoding: {0}")]
    Corrupt(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn corrupt(msg: impl Into<String>) -> Error {
    Error::Corrupt(msg.into())
}
