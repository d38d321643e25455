//! Bayesian prediction of a binary outcome from a categorical observation,
//! with the parameters integrated out.
//!
//! The model: `Pr(Y = 1) = p` is known; the conditional observation
//! distributions given `Y = 1` and `Y = 0` are unknown and carry independent
//! Dirichlet priors. After observing counts the posterior predictive odds of
//! `Y = 1` given the next observation's value have a closed form
//! (a ratio of Dirichlet integrals):
//!
//! ```text
//! odds_k = p/(1-p) * (n_{k,1} + a_k)/(n_{k,0} + b_k) * (n_0 + Σb)/(n_1 + Σa)
//! ```
//!
//! With zero data every prior here predicts the marginal `p` — the
//! observation is ignored. Named priors: uniform (all parameters 1),
//! Jeffreys (all 1/2), equivalent-sample-size (all `s/M`), and a
//! hierarchical 50/50 mixture of the full model with an
//! independence-of-`X`-and-`Y` model, which can put posterior weight back on
//! independence.
//!
//! All types are immutable and all operations pure; likelihoods are
//! computed in log space so long samples cannot underflow.

mod counts;
mod predictive;
mod prior;

pub use counts::{counts_from_sample, SampleCounts};
pub use predictive::{
    bayes_decision, hierarchical_predictive, log_marginal_likelihood, posterior_odds,
    posterior_odds_uniform, posterior_x_predictive, predictive, predictive_for,
    HierarchicalPredictive, PredictiveDistribution,
};
pub use prior::{DirichletProductPrior, PriorSpec};

use thiserror::Error;

/// Errors raised by prior construction and count tallying.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BayesError {
    #[error("invalid prior: {0}")]
    InvalidPrior(String),

    #[error("observation {x} out of range for alphabet size {m}")]
    ObservationOutOfRange { x: usize, m: usize },

    #[error("outcome {y} out of range; Y must be binary")]
    OutcomeOutOfRange { y: usize },

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error(transparent)]
    Decision(#[from] credal_decision::DecisionError),
}
