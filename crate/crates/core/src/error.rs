use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial has no root in (0, 1)")]
    NoRootInUnit,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("inconsistent pair: {0}")]
    InconsistentPair(String),

    #[error("invalid pair: {0}")]
    InvalidPair(String),

    #[error("pair has no matching")]
    NoMatching,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("degree {degree} exceeds the configured ceiling {ceiling}")]
    DegreeCeiling { degree: usize, ceiling: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
