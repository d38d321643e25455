//! Exact evaluation of prediction strategies under an assumed true joint
//! distribution.
//!
//! A strategy sees `n` i.i.d. training pairs and then predicts the outcome
//! of the next pair from its observation. Because every strategy in scope
//! depends on the data only through the per-cell counts, exact risks are
//! computed by enumerating count tables with their multinomial weights
//! rather than sequences — extending exact computation to horizons of
//! several hundred. A seeded Monte Carlo simulator cross-validates the
//! enumeration.
//!
//! Enumeration and simulation are embarrassingly parallel; workers share
//! only immutable inputs, each owns a disjoint output slot, and reductions
//! run in a fixed order, so results are independent of the thread schedule.

mod enumerate;
mod model;
mod simulate;
mod strategy;

pub use enumerate::{count_table_count, enumerate_count_tables, CountTable, CountTableIter};
pub use model::TrueModel;
pub use simulate::{simulate, substream_seed, SimulationResult};
pub use strategy::{
    regret_table, strategy_risk, trigger_probability, trigger_report, RegretTable, Strategy,
    TriggerReport,
};

use thiserror::Error;

/// Cap on the number of count tables enumerated exactly.
pub const TABLE_CAP: u64 = 10_000_000;

/// Errors raised by enumeration and strategy evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{tables} count tables exceed the cap of {cap}")]
    SizeCap { tables: u128, cap: u64 },

    #[error("strategy not evaluable: {0}")]
    UnsupportedStrategy(String),

    #[error("simulation needs at least one run")]
    NoRuns,

    #[error(transparent)]
    Credal(#[from] credal_core::CredalError),

    #[error(transparent)]
    Decision(#[from] credal_decision::DecisionError),

    #[error(transparent)]
    Bayes(#[from] credal_bayes::BayesError),
}

/// Compensated (Kahan) summation for long deterministic reductions.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum
    }
}
