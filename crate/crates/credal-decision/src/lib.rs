//! Decision rules and minimax optimisation over credal sets.
//!
//! An agent observes `X`, then picks an action whose loss depends on `Y`
//! (and possibly on the observation itself). Uncertainty about the joint
//! distribution is a [`credal_core::CredalSet`]. Two standards of optimality
//! are implemented:
//!
//! * [`global_minimax`] — choose a decision rule (observation to action
//!   distribution) before observing, minimising worst-case expected loss
//!   over the whole set. Solved exactly as a finite zero-sum matrix game
//!   whose rows are deterministic rules and whose columns are the set's
//!   extreme points.
//! * [`local_minimax`] — after observing `X = x`, choose an action
//!   distribution minimising worst-case expected loss over the conditioned
//!   set.
//!
//! The two can disagree; [`time_inconsistency_report`] quantifies the
//! disagreement and the premium a locally-minimax agent would pay to avoid
//! the observation.
//!
//! Everything here is a pure function over immutable inputs; the game
//! solver uses only function-local scratch memory.

mod error;
pub mod game;
mod loss;
mod minimax;
mod rule;

pub use error::DecisionError;
pub use game::{solve_matrix_game, GameSolution};
pub use loss::LossSpec;
pub use minimax::{
    expected_loss, global_minimax, local_minimax, optimal_action, time_inconsistency_report,
    worst_case_loss, LocalReport, LocalSolution, TimeInconsistencyReport,
};
pub use rule::{DecisionRule, MinimaxSolution, RuleWeight};

/// Tolerance at which minimax values are certified against direct
/// worst-case evaluation.
pub const VALUE_TOL: f64 = 1e-6;
