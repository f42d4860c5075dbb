use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is singular")]
    Singular,

    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no unit-circle root: {0}")]
    NoUnitCircleRoot(String),

    #[error("search cap exceeded after {cap} candidate pairs for index {index}")]
    SearchCapExceeded { index: usize, cap: u64 },

    #[error("jump too high: jump angle is not below pi - pi/{0}")]
    JumpTooHigh(u64),

    #[error("unsupported module shape: {0}")]
    UnsupportedModuleShape(String),

    #[error("derivation rejected: {0}")]
    Derivation(String),

    #[error("unknown fact: {0}")]
    UnknownFact(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
