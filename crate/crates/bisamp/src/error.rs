use thiserror::Error;

/// Errors shared across the optimizer, baseline, and analytics layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid interval: x0 = {x0} must lie strictly below x1 = {x1}")]
    InvalidInterval { x0: f64, x1: f64 },

    #[error("invalid domain: lo = {lo} must lie strictly below hi = {hi}")]
    InvalidDomain { lo: f64, hi: f64 },

    #[error("regularity condition violated: {0}")]
    ConditionViolation(String),

    #[error("objective returned a non-finite value at x = {x}")]
    Evaluation { x: f64 },

    #[error("candidate queue exhausted")]
    Exhausted,
}

pub type Result<T> = std::result::Result<T, Error>;
