use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} index {index} out of range (size {size})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("map is not measurable: {0}")]
    NotMeasurable(String),

    #[error("kernel is not row-stochastic: {0}")]
    NotStochastic(String),

    #[error("shape mismatch: {0}")]
    Mismatch(String),

    #[error("enumeration would produce {needed} candidates, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("spectral failure: {0}")]
    Spectral(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
