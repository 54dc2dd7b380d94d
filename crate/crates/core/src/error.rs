use thiserror::Error;

pub type Result<T, E = TamariError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TamariError {
    #[error("step parameter m must be at least 1")]
    ZeroStep,
    #[error("word {word:?} is not a {m}-Dyck word")]
    InvalidWord { m: u32, word: String },
    #[error("path length {0} exceeds the 128-step packed representation")]
    TooLong(u64),
    #[error("operation requires a non-empty path")]
    EmptyPath,
    #[error("step parameters differ ({0} vs {1})")]
    StepMismatch(u32, u32),
    #[error("expected {expected} parts, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("resource limit exceeded: {what} ({count} > {cap})")]
    ResourceLimit { what: &'static str, count: String, cap: u64 },
    #[error("{lower} is not below {upper}")]
    NotComparable { lower: String, upper: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("formula produced a non-integral value: {0}")]
    NonIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),
}
