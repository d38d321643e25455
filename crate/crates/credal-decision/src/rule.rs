use credal_core::{CredalError, FiniteDistribution};

use crate::error::DecisionError;

/// A randomized decision rule: one action distribution per observation.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionRule {
    rows: Vec<FiniteDistribution>,
}

impl DecisionRule {
    pub fn new(rows: Vec<FiniteDistribution>) -> Result<Self, DecisionError> {
        let first = rows
            .first()
            .ok_or_else(|| DecisionError::Dimension("rule needs at least one observation".into()))?;
        let actions = first.support_size();
        if rows.iter().any(|r| r.support_size() != actions) {
            return Err(DecisionError::Dimension(
                "rows disagree on the action count".into(),
            ));
        }
        Ok(Self { rows })
    }

    /// The constant rule playing `action` regardless of the observation.
    pub fn constant(x_size: usize, action_count: usize, action: usize) -> Result<Self, DecisionError> {
        if x_size == 0 {
            return Err(DecisionError::Dimension("rule needs at least one observation".into()));
        }
        let row = FiniteDistribution::delta(action_count, action).map_err(credal_to_decision)?;
        Ok(Self {
            rows: vec![row; x_size],
        })
    }

    /// The deterministic rule playing `assignment[x]` on observing `x`.
    pub fn deterministic(assignment: &[usize], action_count: usize) -> Result<Self, DecisionError> {
        let rows = assignment
            .iter()
            .map(|&a| FiniteDistribution::delta(action_count, a).map_err(credal_to_decision))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    pub fn x_size(&self) -> usize {
        self.rows.len()
    }

    pub fn action_count(&self) -> usize {
        self.rows[0].support_size()
    }

    pub fn row(&self, x: usize) -> &FiniteDistribution {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[FiniteDistribution] {
        &self.rows
    }

    /// True when every row is within total variation `tol` of the first.
    pub fn is_constant(&self, tol: f64) -> bool {
        self.rows[1..].iter().all(|r| {
            self.rows[0]
                .total_variation(r)
                .map(|tv| tv <= tol)
                .unwrap_or(false)
        })
    }
}

fn credal_to_decision(e: CredalError) -> DecisionError {
    DecisionError::Dimension(e.to_string())
}

/// One deterministic rule in an optimal mixture, given by its action
/// assignment per observation and its weight.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleWeight {
    pub assignment: Vec<usize>,
    pub weight: f64,
}

/// An optimal rule for the global minimax problem together with the game
/// value and a worst-case vertex.
#[derive(Debug, Clone)]
pub struct MinimaxSolution {
    /// Behavioral form: per-observation action distributions.
    pub rule: DecisionRule,
    /// Worst-case expected loss of `rule`, certified against the vertex scan
    /// within [`crate::VALUE_TOL`].
    pub value: f64,
    /// Index of a credal vertex attaining the worst case.
    pub witness: usize,
    /// Mixture over deterministic rules found by the game solver
    /// (entries with weight above 1e-12 only).
    pub deterministic_mixture: Vec<RuleWeight>,
}
