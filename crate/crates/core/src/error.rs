use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("user count must be at least 1")]
    ZeroUsers,

    #[error("threshold constant must be positive and finite, got {0}")]
    InvalidThresholdConstant(f64),

    #[error("node order is not a permutation of 0..{k}")]
    NotAPermutation { k: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("power {value} at index {index} is outside [0, 1]")]
    PowerOutOfRange { index: usize, value: f64 },

    #[error("invalid rate argument `{name}`: {value}")]
    InvalidRateArgument { name: &'static str, value: f64 },

    #[error("{what} supports at most {cap} users, got {k}")]
    UserCapExceeded {
        what: &'static str,
        k: usize,
        cap: usize,
    },

    #[error("probability must lie in (0, 1), got {0}")]
    InvalidProbability(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
