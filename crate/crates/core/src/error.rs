use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// A return-time search hit its cap before the orbit came back to Y.
    #[error("return time exceeded cap {cap} (partial count {partial})")]
    Truncated { cap: u64, partial: u64 },

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("statistical error: {0}")]
    Statistical(String),

    #[error("partition consistency error: {0}")]
    PartitionConsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
