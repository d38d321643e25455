use credal_core::{FiniteDistribution, JointDistribution, ParamJoint};

use crate::OracleError;

/// The assumed true state of nature: a joint distribution over
/// `(X, Y)` pairs and the number of i.i.d. training pairs drawn from it.
#[derive(Debug, Clone)]
pub struct TrueModel {
    joint: JointDistribution,
    n: u64,
}

impl TrueModel {
    pub fn new(joint: JointDistribution, n: u64) -> Self {
        Self { joint, n }
    }

    pub fn from_param(param: &ParamJoint, n: u64) -> Self {
        Self::new(param.to_joint(), n)
    }

    pub fn joint(&self) -> &JointDistribution {
        &self.joint
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn x_size(&self) -> usize {
        self.joint.x_size()
    }

    pub fn y_size(&self) -> usize {
        self.joint.y_size()
    }

    pub fn y_marginal(&self) -> FiniteDistribution {
        self.joint.y_marginal()
    }

    pub fn x_marginal(&self) -> FiniteDistribution {
        self.joint.x_marginal()
    }

    /// `Pr(Y = 1)` for binary-outcome models, validated strictly interior.
    pub(crate) fn interior_p(&self) -> Result<f64, OracleError> {
        if self.joint.y_size() != 2 {
            return Err(OracleError::UnsupportedStrategy(format!(
                "Bayesian strategies require a binary outcome, model has {}",
                self.joint.y_size()
            )));
        }
        let p = self.y_marginal().prob(1);
        if !(p > 0.0 && p < 1.0) {
            return Err(OracleError::UnsupportedStrategy(format!(
                "Bayesian strategies require Pr(Y=1) strictly inside (0,1), got {p}"
            )));
        }
        Ok(p)
    }
}
