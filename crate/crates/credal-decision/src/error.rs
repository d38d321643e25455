use credal_core::CredalError;
use thiserror::Error;

/// Errors raised by loss construction and game solving.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecisionError {
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Losses may be infinite for expectation purposes, but the game
    /// formulation requires finite payoffs.
    #[error("loss table contains an infinite entry; minimax requires finite losses")]
    InfiniteLoss,

    #[error("payoff matrix entry ({row}, {col}) is not finite")]
    NonFinitePayoff { row: usize, col: usize },

    #[error("{count} deterministic rules exceed the cap of {cap}")]
    SizeCap { count: u128, cap: u64 },

    #[error("linear program failed: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Credal(#[from] CredalError),
}
