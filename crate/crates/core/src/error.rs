use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("log of non-unit")]
    LogOfNonUnit,
    #[error("subdiagram weight mismatch")]
    WeightMismatch,
    #[error("sampling exhausted")]
    SamplingExhausted,
    #[error("block hyperplane degenerate")]
    DegenerateBlock,
    #[error("increase degree bound")]
    IncreaseDegreeBound,
    #[error("unsupported r")]
    UnsupportedR,
    #[error("parameter violations: {}", .0.join("; "))]
    InvalidParams(Vec<String>),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
