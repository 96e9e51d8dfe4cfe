use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("invalid seed {name}: {reason}")]
    InvalidSeed { name: String, reason: String },

    #[error("line {line}: {message}")]
    TableParse { line: usize, message: String },

    #[error("coefficient vector has length {got}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite component {0}")]
    NonFinite(f64),

    #[error("linear system is singular")]
    SingularSystem,

    #[error("element is not invertible (zero or zero divisor)")]
    NotInvertible,

    #[error("zero element has no zero-divisor classification")]
    ZeroElement,

    #[error("invalid sampling: {0}")]
    InvalidSampling(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
