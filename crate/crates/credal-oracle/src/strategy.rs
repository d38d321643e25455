use credal_bayes::{bayes_decision, posterior_odds, predictive_for, DirichletProductPrior, PriorSpec, SampleCounts};
use credal_core::{CredalSet, FiniteDistribution};
use credal_decision::{global_minimax, local_minimax, optimal_action, LossSpec};

use crate::enumerate::enumerate_count_tables;
use crate::model::TrueModel;
use crate::{KahanSum, OracleError};

/// A prediction strategy under comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum Strategy {
    /// Always play the action that is optimal against the known outcome
    /// marginal; the observation and the training data are ignored.
    Ignore,
    /// Predict with the posterior predictive under the named prior and the
    /// loss-minimising action per observation.
    Bayes(PriorSpec),
    /// The per-observation minimax action against the conditioned
    /// marginal family (data-independent).
    LocalMinimax,
    /// The minimax decision rule against the marginal family
    /// (data-independent).
    GlobalMinimax,
}

impl Strategy {
    pub fn name(&self) -> String {
        match self {
            Strategy::Ignore => "ignore".into(),
            Strategy::Bayes(spec) => format!("bayes({})", spec.name()),
            Strategy::LocalMinimax => "local_minimax".into(),
            Strategy::GlobalMinimax => "global_minimax".into(),
        }
    }
}

/// How a strategy maps `(counts, observation)` to an action distribution.
pub(crate) enum Engine {
    Fixed(usize),
    Rule(Vec<FiniteDistribution>),
    Bayes { spec: PriorSpec, p: f64 },
}

impl Engine {
    pub(crate) fn build(
        model: &TrueModel,
        strategy: &Strategy,
        loss: &LossSpec,
    ) -> Result<Engine, OracleError> {
        match strategy {
            Strategy::Ignore => {
                if loss.x_dependent() {
                    return Err(OracleError::UnsupportedStrategy(
                        "ignore is undefined for observation-dependent losses".into(),
                    ));
                }
                let (action, _) = optimal_action(&model.y_marginal(), loss)?;
                Ok(Engine::Fixed(action))
            }
            Strategy::GlobalMinimax => {
                let family = CredalSet::marginal_family(&model.y_marginal(), model.x_size())?;
                let sol = global_minimax(&family, loss)?;
                Ok(Engine::Rule(sol.rule.rows().to_vec()))
            }
            Strategy::LocalMinimax => {
                let family = CredalSet::marginal_family(&model.y_marginal(), model.x_size())?;
                let rows = (0..model.x_size())
                    .map(|x| local_minimax(&family, x, loss).map(|s| s.action))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Engine::Rule(rows))
            }
            Strategy::Bayes(spec) => {
                let p = model.interior_p()?;
                Ok(Engine::Bayes {
                    spec: spec.clone(),
                    p,
                })
            }
        }
    }

    /// The action distribution played at observation `x` given counts.
    /// `Fixed` and `Rule` ignore the counts.
    pub(crate) fn action_probs(
        &self,
        counts: &SampleCounts,
        x: usize,
        loss: &LossSpec,
    ) -> Result<ActionProbs, OracleError> {
        match self {
            Engine::Fixed(a) => Ok(ActionProbs::Point(*a)),
            Engine::Rule(rows) => Ok(ActionProbs::Mixed(rows[x].clone())),
            Engine::Bayes { spec, p } => {
                let pred = predictive_for(spec, *p, counts)?;
                Ok(ActionProbs::Point(bayes_decision(&pred, loss, x)?))
            }
        }
    }

    fn data_dependent(&self) -> bool {
        matches!(self, Engine::Bayes { .. })
    }
}

pub(crate) enum ActionProbs {
    Point(usize),
    Mixed(FiniteDistribution),
}

impl ActionProbs {
    /// Expected loss against outcome `y` at observation `x`.
    fn loss_against(&self, y: usize, x: usize, loss: &LossSpec) -> f64 {
        match self {
            ActionProbs::Point(a) => loss.loss(y, *a, x),
            ActionProbs::Mixed(dist) => (0..dist.support_size())
                .map(|a| {
                    let w = dist.prob(a);
                    if w > 0.0 {
                        w * loss.loss(y, a, x)
                    } else {
                        0.0
                    }
                })
                .sum(),
        }
    }
}

/// Expected loss of the next-pair prediction at fixed counts.
fn next_pair_loss(
    engine: &Engine,
    counts: &SampleCounts,
    model: &TrueModel,
    loss: &LossSpec,
) -> Result<f64, OracleError> {
    let mut total = 0.0;
    for x in 0..model.x_size() {
        let row_mass: f64 = (0..model.y_size()).map(|y| model.joint().prob(x, y)).sum();
        if row_mass == 0.0 {
            continue;
        }
        let probs = engine.action_probs(counts, x, loss)?;
        for y in 0..model.y_size() {
            let p = model.joint().prob(x, y);
            if p > 0.0 {
                total += p * probs.loss_against(y, x, loss);
            }
        }
    }
    Ok(total)
}

/// Exact expected loss of the strategy's prediction for the `(n+1)`-th
/// pair, averaged over training data drawn i.i.d. from the model and over
/// the next pair itself.
pub fn strategy_risk(
    model: &TrueModel,
    strategy: &Strategy,
    loss: &LossSpec,
) -> Result<f64, OracleError> {
    let engine = Engine::build(model, strategy, loss)?;
    if !engine.data_dependent() {
        let empty = SampleCounts::empty(model.x_size())?;
        return next_pair_loss(&engine, &empty, model, loss);
    }
    let mut risk = KahanSum::default();
    for table in enumerate_count_tables(model)? {
        if table.weight > 0.0 {
            risk.add(table.weight * next_pair_loss(&engine, &table.counts, model, loss)?);
        }
    }
    Ok(risk.total())
}

/// Trigger probabilities: how often the Bayesian's posterior odds cross the
/// asymmetric-loss threshold and it predicts the minority outcome.
#[derive(Debug, Clone)]
pub struct TriggerReport {
    /// Probability averaged over the next observation under the model.
    pub averaged: f64,
    /// Probability of the threshold crossing at each fixed next
    /// observation.
    pub per_k: Vec<f64>,
}

/// Probability, over training data and the next observation, that
/// `alpha < posterior_odds` — i.e. that the Bayesian deviates from the
/// always-predict-0 plan. Exact enumeration over count tables.
pub fn trigger_report(
    model: &TrueModel,
    prior: &DirichletProductPrior,
    alpha: f64,
) -> Result<TriggerReport, OracleError> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(OracleError::UnsupportedStrategy(format!(
            "threshold {alpha} must be finite and positive"
        )));
    }
    model.interior_p()?;
    let m = model.x_size();
    let x_marg = model.x_marginal();
    let mut per_k = vec![KahanSum::default(); m];
    for table in enumerate_count_tables(model)? {
        if table.weight == 0.0 {
            continue;
        }
        for (k, acc) in per_k.iter_mut().enumerate() {
            if alpha < posterior_odds(prior, &table.counts, k)? {
                acc.add(table.weight);
            }
        }
    }
    let per_k: Vec<f64> = per_k.iter().map(KahanSum::total).collect();
    let averaged = (0..m).map(|k| x_marg.prob(k) * per_k[k]).sum();
    Ok(TriggerReport { averaged, per_k })
}

/// The averaged trigger probability alone.
pub fn trigger_probability(
    model: &TrueModel,
    prior: &DirichletProductPrior,
    alpha: f64,
) -> Result<f64, OracleError> {
    Ok(trigger_report(model, prior, alpha)?.averaged)
}

/// Risks and regrets of each strategy under each candidate model.
#[derive(Debug, Clone)]
pub struct RegretTable {
    /// `risks[model][strategy]`.
    pub risks: Vec<Vec<f64>>,
    /// Best risk among the listed strategies, per model.
    pub best_per_model: Vec<f64>,
    /// `risk - best` per cell.
    pub regret: Vec<Vec<f64>>,
    /// Worst regret across models, per strategy.
    pub worst_regret_per_strategy: Vec<f64>,
}

pub fn regret_table(
    models: &[TrueModel],
    strategies: &[Strategy],
    loss: &LossSpec,
) -> Result<RegretTable, OracleError> {
    let mut risks = Vec::with_capacity(models.len());
    for model in models {
        let row = strategies
            .iter()
            .map(|s| strategy_risk(model, s, loss))
            .collect::<Result<Vec<_>, _>>()?;
        risks.push(row);
    }
    let best_per_model: Vec<f64> = risks
        .iter()
        .map(|row| row.iter().cloned().fold(f64::INFINITY, f64::min))
        .collect();
    let regret: Vec<Vec<f64>> = risks
        .iter()
        .zip(&best_per_model)
        .map(|(row, best)| row.iter().map(|r| r - best).collect())
        .collect();
    let worst_regret_per_strategy: Vec<f64> = (0..strategies.len())
        .map(|s| {
            regret
                .iter()
                .map(|row| row[s])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    Ok(RegretTable {
        risks,
        best_per_model,
        regret,
        worst_regret_per_strategy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use credal_core::JointDistribution;

    fn independence_model(n: u64) -> TrueModel {
        TrueModel::new(JointDistribution::new(2, 2, vec![0.25; 4]).unwrap(), n)
    }

    fn correlated_model(n: u64) -> TrueModel {
        TrueModel::new(
            JointDistribution::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap(),
            n,
        )
    }

    #[test]
    fn ignore_risk_is_the_marginal_value() {
        let loss = LossSpec::asymmetric(1.4).unwrap();
        let model = independence_model(4);
        let risk = strategy_risk(&model, &Strategy::Ignore, &loss).unwrap();
        assert!((risk - 0.5).abs() < 1e-12);
        // any model with the same marginal gives the same ignore risk
        let corr = correlated_model(4);
        let risk = strategy_risk(&corr, &Strategy::Ignore, &loss).unwrap();
        assert!((risk - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zero_horizon_bayes_matches_ignore() {
        let loss = LossSpec::asymmetric(1.4).unwrap();
        let model = independence_model(0);
        let bayes = strategy_risk(&model, &Strategy::Bayes(PriorSpec::Uniform), &loss).unwrap();
        let ignore = strategy_risk(&model, &Strategy::Ignore, &loss).unwrap();
        assert!((bayes - ignore).abs() < 1e-12);
    }

    #[test]
    fn trigger_is_zero_at_zero_horizon() {
        let model = independence_model(0);
        let prior = DirichletProductPrior::uniform(2, 0.5).unwrap();
        let beta = trigger_probability(&model, &prior, 1.4).unwrap();
        assert_eq!(beta, 0.0);
    }

    #[test]
    fn trigger_reproduces_exact_enumeration() {
        // n=4, threshold 1.4, independence: exactly 9/32 of the mass
        // crosses the threshold (both per-k and averaged, by symmetry).
        let model = independence_model(4);
        let prior = DirichletProductPrior::uniform(2, 0.5).unwrap();
        let report = trigger_report(&model, &prior, 1.4).unwrap();
        assert!((report.averaged - 9.0 / 32.0).abs() < 1e-12);
        for k in 0..2 {
            assert!((report.per_k[k] - 9.0 / 32.0).abs() < 1e-12);
        }
        // a higher threshold triggers strictly less often
        let high = trigger_probability(&model, &prior, 10.0).unwrap();
        assert!(high < report.averaged);
    }

    #[test]
    fn gap_identity_links_trigger_and_risks() {
        let alpha = 1.4;
        let loss = LossSpec::asymmetric(alpha).unwrap();
        let prior = DirichletProductPrior::uniform(2, 0.5).unwrap();
        for n in [1, 2, 4] {
            let model = independence_model(n);
            let bayes =
                strategy_risk(&model, &Strategy::Bayes(PriorSpec::Uniform), &loss).unwrap();
            let ignore = strategy_risk(&model, &Strategy::Ignore, &loss).unwrap();
            let beta = trigger_probability(&model, &prior, alpha).unwrap();
            assert!(
                ((bayes - ignore) - beta * (alpha - 1.0) / 2.0).abs() < 1e-9,
                "n={n}: gap {} vs beta*(alpha-1)/2 {}",
                bayes - ignore,
                beta * (alpha - 1.0) / 2.0
            );
        }
    }

    #[test]
    fn bayes_learns_perfect_correlation() {
        let loss = LossSpec::asymmetric(1.4).unwrap();
        // at n=4 every reachable count table already pushes the odds past
        // the threshold on the correlated side, so the Bayesian is exact
        let bayes = strategy_risk(
            &correlated_model(4),
            &Strategy::Bayes(PriorSpec::Uniform),
            &loss,
        )
        .unwrap();
        assert!(bayes.abs() < 1e-12);
        // and stays exact at larger horizons
        let bayes32 = strategy_risk(
            &correlated_model(32),
            &Strategy::Bayes(PriorSpec::Uniform),
            &loss,
        )
        .unwrap();
        assert!(bayes32.abs() < 1e-12);
    }

    #[test]
    fn minimax_strategies_match_their_rules() {
        let loss = LossSpec::zero_one(2);
        let joint = JointDistribution::new(2, 2, vec![0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0]).unwrap();
        let model = TrueModel::new(joint, 3);
        // global minimax: constant predict-0 (p = 1/3), risk = Pr(Y=1)
        let global = strategy_risk(&model, &Strategy::GlobalMinimax, &loss).unwrap();
        assert!((global - 1.0 / 3.0).abs() < 1e-9);
        // local minimax randomizes 50/50 at every observation: risk 1/2
        let local = strategy_risk(&model, &Strategy::LocalMinimax, &loss).unwrap();
        assert!((local - 0.5).abs() < 1e-9);
    }

    #[test]
    fn regret_table_shape_and_asymmetry() {
        let loss = LossSpec::asymmetric(1.4).unwrap();
        let models = [independence_model(4), correlated_model(4)];
        let strategies = [Strategy::Ignore, Strategy::Bayes(PriorSpec::Uniform)];
        let table = regret_table(&models, &strategies, &loss).unwrap();
        // independence: ignore is best; bayes pays the trigger premium
        assert_eq!(table.regret[0][0], 0.0);
        let expected_gap = (9.0 / 32.0) * 0.4 / 2.0;
        assert!((table.regret[0][1] - expected_gap).abs() < 1e-9);
        // correlation: bayes is exact, ignore pays 1/2
        assert_eq!(table.regret[1][1], 0.0);
        assert!((table.regret[1][0] - 0.5).abs() < 1e-9);
        // worst-case regrets follow
        assert!((table.worst_regret_per_strategy[0] - 0.5).abs() < 1e-9);
        assert!((table.worst_regret_per_strategy[1] - expected_gap).abs() < 1e-9);
    }

    #[test]
    fn strategy_self_comparison_has_zero_regret() {
        let loss = LossSpec::zero_one(2);
        let models = [independence_model(2)];
        let strategies = [Strategy::Ignore];
        let table = regret_table(&models, &strategies, &loss).unwrap();
        assert_eq!(table.regret[0][0], 0.0);
        assert_eq!(table.worst_regret_per_strategy[0], 0.0);
    }
}
