use thiserror::Error;

/// Errors raised by probability and credal-set constructors and operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CredalError {
    /// A dimension is zero, or two objects disagree on dimensions.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A mass vector has negative entries, NaN, or does not sum to one.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// An index is outside the outcome space it refers to.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Conditioning on `X = x` is undefined: every vertex assigns (near-)zero
    /// probability to the observation.
    #[error("conditioning undefined: every vertex assigns zero probability to X={x}")]
    ConditioningUndefined { x: usize },

    /// The operation is specified only for a particular credal family.
    #[error("unsupported credal family: {0}")]
    UnsupportedFamily(String),
}
