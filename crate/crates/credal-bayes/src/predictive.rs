use credal_decision::LossSpec;
use statrs::function::gamma::ln_gamma;

use crate::counts::SampleCounts;
use crate::prior::{DirichletProductPrior, PriorSpec};
use crate::BayesError;

/// Posterior predictive `q_k = Pr(Y_{n+1} = 1 | X_{n+1} = k, data)` for
/// every observation value `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictiveDistribution {
    q: Vec<f64>,
}

impl PredictiveDistribution {
    pub fn new(q: Vec<f64>) -> Self {
        Self { q }
    }

    pub fn m(&self) -> usize {
        self.q.len()
    }

    /// `Pr(Y_{n+1} = 1 | X_{n+1} = k, data)`.
    pub fn q(&self, k: usize) -> f64 {
        self.q[k]
    }

    pub fn values(&self) -> &[f64] {
        &self.q
    }
}

fn check_dims(prior: &DirichletProductPrior, counts: &SampleCounts) -> Result<(), BayesError> {
    if prior.m() != counts.m() {
        return Err(BayesError::Dimension(format!(
            "prior covers {} observation values, counts cover {}",
            prior.m(),
            counts.m()
        )));
    }
    Ok(())
}

/// Posterior odds of `Y_{n+1} = 1` against `Y_{n+1} = 0` given
/// `X_{n+1} = k`: the ratio of two Dirichlet integrals in closed form,
///
/// ```text
/// p/(1-p) * (n_{k,1} + a_k)/(n_{k,0} + b_k) * (n_0 + Σb)/(n_1 + Σa)
/// ```
pub fn posterior_odds(
    prior: &DirichletProductPrior,
    counts: &SampleCounts,
    k: usize,
) -> Result<f64, BayesError> {
    check_dims(prior, counts)?;
    if k >= counts.m() {
        return Err(BayesError::ObservationOutOfRange { x: k, m: counts.m() });
    }
    let p = prior.p();
    let [n0, n1] = counts.n_y();
    Ok(p / (1.0 - p)
        * ((counts.count(k, 1) as f64 + prior.a()[k]) / (counts.count(k, 0) as f64 + prior.b()[k]))
        * ((n0 as f64 + prior.b_sum()) / (n1 as f64 + prior.a_sum())))
}

/// The uniform-prior simplification of [`posterior_odds`]: all Dirichlet
/// parameters are 1, so the correction factors are pure count ratios.
/// Agrees bit-for-bit with `posterior_odds` under the uniform constructor.
pub fn posterior_odds_uniform(p: f64, counts: &SampleCounts, k: usize) -> Result<f64, BayesError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(BayesError::InvalidPrior(format!(
            "Pr(Y=1) = {p} must lie strictly inside (0, 1)"
        )));
    }
    if k >= counts.m() {
        return Err(BayesError::ObservationOutOfRange { x: k, m: counts.m() });
    }
    let m = counts.m() as f64;
    let [n0, n1] = counts.n_y();
    Ok(p / (1.0 - p)
        * ((counts.count(k, 1) as f64 + 1.0) / (counts.count(k, 0) as f64 + 1.0))
        * ((n0 as f64 + m) / (n1 as f64 + m)))
}

/// The full posterior predictive: `q_k = odds_k / (1 + odds_k)` per
/// observation value.
pub fn predictive(
    prior: &DirichletProductPrior,
    counts: &SampleCounts,
) -> Result<PredictiveDistribution, BayesError> {
    let q = (0..counts.m())
        .map(|k| posterior_odds(prior, counts, k).map(|o| o / (1.0 + o)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PredictiveDistribution::new(q))
}

/// The action minimising expected loss against the predictive at
/// observation `k`. Observation-dependent losses are sliced at `k`; ties
/// break toward the lowest action index. For binary actions and the
/// asymmetric loss this is the threshold test "predict 1 iff the cost
/// ratio is below the posterior odds".
pub fn bayes_decision(
    pred: &PredictiveDistribution,
    loss: &LossSpec,
    k: usize,
) -> Result<usize, BayesError> {
    if loss.y_size() != 2 {
        return Err(BayesError::Dimension(format!(
            "predictive is binary but loss covers {} outcomes",
            loss.y_size()
        )));
    }
    if let Some(xs) = loss.x_size() {
        if k >= xs {
            return Err(BayesError::ObservationOutOfRange { x: k, m: xs });
        }
    }
    let q = pred.q(k);
    let weights = [1.0 - q, q];
    let mut best = (0usize, f64::INFINITY);
    for a in 0..loss.action_count() {
        let mut v = 0.0;
        for (y, &w) in weights.iter().enumerate() {
            if w > 0.0 {
                v += w * loss.loss(y, a, k);
            }
        }
        if v < best.1 {
            best = (a, v);
        }
    }
    Ok(best.0)
}

fn log_dirichlet_ratio(params: &[f64], counts: &[u64]) -> f64 {
    let mut acc = 0.0;
    let mut param_sum = 0.0;
    let mut count_sum = 0u64;
    for (&a, &c) in params.iter().zip(counts) {
        param_sum += a;
        count_sum += c;
        if c > 0 {
            acc += ln_gamma(a + c as f64) - ln_gamma(a);
        }
    }
    if count_sum > 0 {
        acc -= ln_gamma(param_sum + count_sum as f64) - ln_gamma(param_sum);
    }
    acc
}

/// Log marginal likelihood of the observed counts (as one specific
/// sequence): the outcome-marginal factor times the two Dirichlet
/// normaliser ratios, all via log-gamma.
pub fn log_marginal_likelihood(
    prior: &DirichletProductPrior,
    counts: &SampleCounts,
) -> Result<f64, BayesError> {
    check_dims(prior, counts)?;
    let [n0, n1] = counts.n_y();
    let p = prior.p();
    Ok(n1 as f64 * p.ln()
        + n0 as f64 * (1.0 - p).ln()
        + log_dirichlet_ratio(prior.a(), &counts.column(1))
        + log_dirichlet_ratio(prior.b(), &counts.column(0)))
}

/// `Pr(X_{n+1} = k | data)` for every `k`, under the same posterior as
/// [`predictive`].
pub fn posterior_x_predictive(
    prior: &DirichletProductPrior,
    counts: &SampleCounts,
) -> Result<Vec<f64>, BayesError> {
    check_dims(prior, counts)?;
    let base = log_marginal_likelihood(prior, counts)?;
    let mut probs = Vec::with_capacity(counts.m());
    for k in 0..counts.m() {
        let mut total = 0.0;
        for y in 0..2 {
            let augmented = counts.with_observation(k, y)?;
            total += (log_marginal_likelihood(prior, &augmented)? - base).exp();
        }
        probs.push(total);
    }
    let sum: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|v| *v /= sum);
    Ok(probs)
}

/// Predictive of the 50/50 hierarchical mixture, with diagnostics.
#[derive(Debug, Clone)]
pub struct HierarchicalPredictive {
    pub q: PredictiveDistribution,
    /// Posterior weight of the full (dependence-capable) model per
    /// observation value, given the data and `X_{n+1} = k`.
    pub full_model_weight: Vec<f64>,
    /// `Pr(X_{n+1} = k | data)` under the mixture.
    pub x_predictive: Vec<f64>,
}

fn log_sum_exp(a: f64, b: f64) -> f64 {
    let hi = a.max(b);
    let lo = a.min(b);
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Bayesian model average of the independence model (outcome marginal `p`
/// known, one shared observation multinomial under a uniform Dirichlet,
/// observations carrying no information about outcomes) with the full
/// uniform Dirichlet-product model, prior weight 1/2 each. Posterior
/// weights come from each model's marginal likelihood of the data together
/// with `X_{n+1}`; the independence component always predicts `p`.
pub fn hierarchical_predictive(
    p: f64,
    counts: &SampleCounts,
) -> Result<HierarchicalPredictive, BayesError> {
    let m = counts.m();
    let full = DirichletProductPrior::uniform(m, p)?;
    let [n0, n1] = counts.n_y();
    let y_part = n1 as f64 * p.ln() + n0 as f64 * (1.0 - p).ln();
    let ones = vec![1.0; m];

    let full_pred = predictive(&full, counts)?;

    let mut q = Vec::with_capacity(m);
    let mut weight_full = Vec::with_capacity(m);
    let mut log_joint = Vec::with_capacity(m);
    for k in 0..m {
        // independence model: Y-part times the shared X-multinomial with
        // the (n+1)-th observation appended
        let mut x_counts = counts.n_x();
        x_counts[k] += 1;
        let log_ind = y_part + log_dirichlet_ratio(&ones, &x_counts);

        // full model: marginalise Y_{n+1} out of the augmented counts
        let log_full = log_sum_exp(
            log_marginal_likelihood(&full, &counts.with_observation(k, 0)?)?,
            log_marginal_likelihood(&full, &counts.with_observation(k, 1)?)?,
        );

        let lse = log_sum_exp(log_ind, log_full);
        let w_full = (log_full - lse).exp();
        let w_ind = (log_ind - lse).exp();
        q.push(w_ind * p + w_full * full_pred.q(k));
        weight_full.push(w_full);
        log_joint.push(lse);
    }

    // Pr(X_{n+1} = k | data) under the mixture: normalise the per-k joint
    // likelihoods (the 1/2 prior weights cancel).
    let max = log_joint.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut x_pred: Vec<f64> = log_joint.iter().map(|&l| (l - max).exp()).collect();
    let total: f64 = x_pred.iter().sum();
    x_pred.iter_mut().for_each(|v| *v /= total);

    Ok(HierarchicalPredictive {
        q: PredictiveDistribution::new(q),
        full_model_weight: weight_full,
        x_predictive: x_pred,
    })
}

/// Predictive under a named prior: Dirichlet-product priors go through
/// [`predictive`], the hierarchical mixture through
/// [`hierarchical_predictive`].
pub fn predictive_for(
    spec: &PriorSpec,
    p: f64,
    counts: &SampleCounts,
) -> Result<PredictiveDistribution, BayesError> {
    match spec.build(counts.m(), p)? {
        Some(prior) => predictive(&prior, counts),
        None => Ok(hierarchical_predictive(p, counts)?.q),
    }
}
