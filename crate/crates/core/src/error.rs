use thiserror::Error;

/// Errors raised for malformed inputs. Infinite divergences are values, not errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mass at index {index} is negative ({value})")]
    NegativeMass { index: usize, value: f64 },
    #[error("mass at index {index} is not finite")]
    NonFinite { index: usize },
    #[error("masses sum to {sum}, outside the accepted tolerance around 1")]
    SumOutOfTolerance { sum: f64 },
    #[error("alphabet must have at least 2 symbols, got {len}")]
    AlphabetTooSmall { len: usize },
    #[error("alphabet sizes differ ({left} vs {right})")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("strict positivity required: {0}")]
    PositivityRequired(&'static str),
    #[error("Q_min must be positive")]
    QminZero,
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("alphabet size {size} is not supported by this operation (max {max})")]
    UnsupportedAlphabetSize { size: usize, max: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
