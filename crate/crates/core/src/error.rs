use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("nonzero composite: {0}")]
    NonzeroComposite(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("input is not weight-graded: {0}")]
    Ungraded(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("containment failure: {0}")]
    Containment(String),
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("layer out of range: {0}")]
    LayerOutOfRange(String),
    #[error("empty multiset in term")]
    EmptyMultiset,
    #[error("naturality square does not commute: {0}")]
    Naturality(String),
    #[error("block too large: {0}")]
    BlockTooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
