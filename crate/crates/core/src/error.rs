use thiserror::Error;

/// Errors raised by the library. Vertex labels in messages are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid exchange matrix: {0}")]
    InvalidExchangeMatrix(String),

    #[error("vertex {vertex} out of range 1..={n}")]
    IndexOutOfRange { vertex: usize, n: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("no arrow {source_vertex}->{target}")]
    ArrowAbsent { source_vertex: usize, target: usize },

    #[error("sequence is not reddening")]
    NotReddening,

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    /// A computed object contradicts a theorem (sign coherence, integrality,
    /// unimodularity). Seeing this means a bug or a hand-built input that is
    /// not reachable by mutation.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("not a connected tame quiver: {0}")]
    NotTame(String),

    #[error("Coxeter period not found up to {0}")]
    PeriodNotFound(usize),

    #[error("non-integral result: {0}")]
    NonIntegral(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
