use credal_core::{CredalSet, FiniteDistribution, JointDistribution, SUPPORT_TOL};

use crate::error::DecisionError;
use crate::game::solve_matrix_game;
use crate::loss::LossSpec;
use crate::rule::{DecisionRule, MinimaxSolution, RuleWeight};
use crate::VALUE_TOL;

/// Cap on the number of deterministic rules materialised for the game.
pub const RULE_CAP: u64 = 1_000_000;

fn check_dims(joint_x: usize, joint_y: usize, rule: Option<&DecisionRule>, loss: &LossSpec) -> Result<(), DecisionError> {
    if loss.y_size() != joint_y {
        return Err(DecisionError::Dimension(format!(
            "loss covers {} outcomes, joint has {}",
            loss.y_size(),
            joint_y
        )));
    }
    if let Some(xs) = loss.x_size() {
        if xs != joint_x {
            return Err(DecisionError::Dimension(format!(
                "loss covers {xs} observations, joint has {joint_x}"
            )));
        }
    }
    if let Some(r) = rule {
        if r.x_size() != joint_x {
            return Err(DecisionError::Dimension(format!(
                "rule covers {} observations, joint has {joint_x}",
                r.x_size()
            )));
        }
        if r.action_count() != loss.action_count() {
            return Err(DecisionError::Dimension(format!(
                "rule has {} actions, loss has {}",
                r.action_count(),
                loss.action_count()
            )));
        }
    }
    Ok(())
}

/// Expected loss of a randomized rule under one joint distribution.
///
/// `+∞` propagates exactly when an infinite-loss cell carries positive
/// probability; zero-probability cells never contribute.
pub fn expected_loss(
    joint: &JointDistribution,
    rule: &DecisionRule,
    loss: &LossSpec,
) -> Result<f64, DecisionError> {
    check_dims(joint.x_size(), joint.y_size(), Some(rule), loss)?;
    let mut total = 0.0;
    for x in 0..joint.x_size() {
        let row = rule.row(x);
        for y in 0..joint.y_size() {
            let p = joint.prob(x, y);
            if p == 0.0 {
                continue;
            }
            for a in 0..rule.action_count() {
                let w = p * row.prob(a);
                if w > 0.0 {
                    total += w * loss.loss(y, a, x);
                }
            }
        }
    }
    Ok(total)
}

/// The action minimising expected loss against a known outcome
/// distribution, with the attained value. Ties break toward the lowest
/// action index. Requires an observation-independent loss.
pub fn optimal_action(
    p_y: &FiniteDistribution,
    loss: &LossSpec,
) -> Result<(usize, f64), DecisionError> {
    if loss.x_dependent() {
        return Err(DecisionError::Dimension(
            "optimal_action requires an observation-independent loss".into(),
        ));
    }
    if loss.y_size() != p_y.support_size() {
        return Err(DecisionError::Dimension(format!(
            "loss covers {} outcomes, distribution has {}",
            loss.y_size(),
            p_y.support_size()
        )));
    }
    let mut best = (0usize, f64::INFINITY);
    for a in 0..loss.action_count() {
        let mut v = 0.0;
        for y in 0..loss.y_size() {
            let p = p_y.prob(y);
            if p > 0.0 {
                v += p * loss.loss(y, a, 0);
            }
        }
        if v < best.1 {
            best = (a, v);
        }
    }
    if best.1.is_infinite() {
        // every action infinite; report action 0 with its value
        return Ok((0, f64::INFINITY));
    }
    Ok(best)
}

/// Maximum expected loss of a rule over the credal set, with the index of a
/// worst-case vertex (lowest index on ties). Exact because the objective is
/// linear in the joint.
pub fn worst_case_loss(
    credal: &CredalSet,
    rule: &DecisionRule,
    loss: &LossSpec,
) -> Result<(f64, usize), DecisionError> {
    let mut worst = f64::NEG_INFINITY;
    let mut witness = 0;
    for (i, v) in credal.vertices().iter().enumerate() {
        let e = expected_loss(v, rule, loss)?;
        if e > worst {
            worst = e;
            witness = i;
        }
    }
    Ok((worst, witness))
}

fn assignment_of(code: u64, x_size: usize, action_count: u64) -> Vec<usize> {
    let mut rest = code;
    (0..x_size)
        .map(|_| {
            let a = (rest % action_count) as usize;
            rest /= action_count;
            a
        })
        .collect()
}

/// The minimax decision rule over the whole credal set, chosen before
/// observing.
///
/// Formulated as a zero-sum matrix game with one row per deterministic rule
/// and one column per credal vertex; mixtures over deterministic rules and
/// behavioral rules are interchangeable here, so the optimal mixture is
/// converted to per-observation action distributions.
pub fn global_minimax(
    credal: &CredalSet,
    loss: &LossSpec,
) -> Result<MinimaxSolution, DecisionError> {
    if loss.has_infinite() {
        return Err(DecisionError::InfiniteLoss);
    }
    check_dims(credal.x_size(), credal.y_size(), None, loss)?;
    let x_size = credal.x_size();
    let actions = loss.action_count() as u64;
    let count = (actions as u128).pow(x_size as u32);
    if count > RULE_CAP as u128 {
        return Err(DecisionError::SizeCap {
            count,
            cap: RULE_CAP,
        });
    }
    let count = count as u64;

    let payoff: Vec<Vec<f64>> = (0..count)
        .map(|code| {
            let assignment = assignment_of(code, x_size, actions);
            credal
                .vertices()
                .iter()
                .map(|v| {
                    let mut e = 0.0;
                    for x in 0..x_size {
                        for y in 0..credal.y_size() {
                            let p = v.prob(x, y);
                            if p > 0.0 {
                                e += p * loss.loss(y, assignment[x], x);
                            }
                        }
                    }
                    e
                })
                .collect()
        })
        .collect();

    let sol = solve_matrix_game(&payoff)?;

    // Behavioral conversion: per observation, marginalise the mixture over
    // the action it assigns there. Payoffs against every joint are
    // preserved exactly.
    let mut rows = vec![vec![0.0; actions as usize]; x_size];
    let mut mixture = Vec::new();
    for (code, &w) in sol.row_mixture.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        let assignment = assignment_of(code as u64, x_size, actions);
        for (x, &a) in assignment.iter().enumerate() {
            rows[x][a] += w;
        }
        if w > 1e-12 {
            mixture.push(RuleWeight {
                assignment,
                weight: w,
            });
        }
    }
    let rows = rows
        .into_iter()
        .map(|mut r| {
            let s: f64 = r.iter().sum();
            r.iter_mut().for_each(|v| *v /= s);
            FiniteDistribution::new(r).map_err(|e| DecisionError::Dimension(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rule = DecisionRule::new(rows)?;

    let (worst, witness) = worst_case_loss(credal, &rule, loss)?;
    debug_assert!(
        (worst - sol.value).abs() <= VALUE_TOL,
        "behavioral worst case {worst} drifted from game value {}",
        sol.value
    );

    Ok(MinimaxSolution {
        rule,
        value: sol.value,
        witness,
        deterministic_mixture: mixture,
    })
}

/// Minimax action after observing `X = x`.
#[derive(Debug, Clone)]
pub struct LocalSolution {
    pub action: FiniteDistribution,
    pub value: f64,
}

/// The action distribution minimising worst-case expected loss over the
/// credal set conditioned on `X = x` (regular extension: vertices nulling
/// the observation are dropped). Observation-dependent losses use their
/// slice at `x`.
pub fn local_minimax(
    credal: &CredalSet,
    x: usize,
    loss: &LossSpec,
) -> Result<LocalSolution, DecisionError> {
    check_dims(credal.x_size(), credal.y_size(), None, loss)?;
    let slice = loss.slice_at(if loss.x_dependent() { x } else { 0 })?;
    if slice.has_infinite() {
        return Err(DecisionError::InfiniteLoss);
    }
    let conditioned: Vec<FiniteDistribution> = credal
        .vertices()
        .iter()
        .filter_map(|v| v.condition_on_x(x))
        .collect();
    if conditioned.is_empty() {
        return Err(credal_core::CredalError::ConditioningUndefined { x }.into());
    }
    let payoff: Vec<Vec<f64>> = (0..slice.action_count())
        .map(|a| {
            conditioned
                .iter()
                .map(|q| {
                    (0..slice.y_size())
                        .map(|y| q.prob(y) * slice.loss(y, a, 0))
                        .sum()
                })
                .collect()
        })
        .collect();
    let sol = solve_matrix_game(&payoff)?;
    let action = FiniteDistribution::new(sol.row_mixture)
        .map_err(|e| DecisionError::Dimension(e.to_string()))?;
    Ok(LocalSolution {
        action,
        value: sol.value,
    })
}

/// Local minimax outcome at one observation, compared against the global
/// rule's row there.
#[derive(Debug, Clone)]
pub struct LocalReport {
    pub x: usize,
    pub action: FiniteDistribution,
    pub value: f64,
    /// Total variation between the local action and the global rule's row
    /// exceeds [`VALUE_TOL`].
    pub disagrees: bool,
}

/// Side-by-side comparison of the global minimax rule with the per-
/// observation local minimax actions.
#[derive(Debug, Clone)]
pub struct TimeInconsistencyReport {
    pub global: MinimaxSolution,
    pub locals: Vec<LocalReport>,
    /// Some observation's local action differs from the global rule.
    pub inconsistent: bool,
    /// Worst local value minus global value: the premium a locally-minimax
    /// agent would pay to avoid observing at all.
    pub pay_not_to_know: f64,
}

/// Solves both the global and the per-observation local problems and flags
/// disagreement. Observations to which every vertex assigns (near-)zero
/// probability are skipped.
pub fn time_inconsistency_report(
    credal: &CredalSet,
    loss: &LossSpec,
) -> Result<TimeInconsistencyReport, DecisionError> {
    let global = global_minimax(credal, loss)?;
    let mut locals = Vec::new();
    let mut worst_local = f64::NEG_INFINITY;
    for x in 0..credal.x_size() {
        let admissible = credal
            .vertices()
            .iter()
            .any(|v| (0..credal.y_size()).map(|y| v.prob(x, y)).sum::<f64>() > SUPPORT_TOL);
        if !admissible {
            continue;
        }
        let local = local_minimax(credal, x, loss)?;
        let tv = local
            .action
            .total_variation(global.rule.row(x))
            .map_err(|e| DecisionError::Dimension(e.to_string()))?;
        worst_local = worst_local.max(local.value);
        locals.push(LocalReport {
            x,
            action: local.action,
            value: local.value,
            disagrees: tv > VALUE_TOL,
        });
    }
    let inconsistent = locals.iter().any(|l| l.disagrees);
    Ok(TimeInconsistencyReport {
        pay_not_to_know: worst_local - global.value,
        inconsistent,
        locals,
        global,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use credal_core::CredalSet;

    fn binary_marginal(p1: f64) -> FiniteDistribution {
        FiniteDistribution::bernoulli(p1).unwrap()
    }

    fn family(p1: f64) -> CredalSet {
        CredalSet::marginal_family(&binary_marginal(p1), 2).unwrap()
    }

    #[test]
    fn expected_loss_matches_hand_computation() {
        // p = 1/3 with 0/1 loss: the fifty-fifty rule loses 1/2 against
        // every joint, the constant-0 rule loses exactly p.
        let c = family(1.0 / 3.0);
        let l = LossSpec::zero_one(2);
        let half = FiniteDistribution::uniform(2).unwrap();
        let mix = DecisionRule::new(vec![half.clone(), half]).unwrap();
        let zero = DecisionRule::constant(2, 2, 0).unwrap();
        for v in c.vertices() {
            assert!((expected_loss(v, &mix, &l).unwrap() - 0.5).abs() < 1e-12);
            assert!((expected_loss(v, &zero, &l).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn expected_loss_zero_table() {
        let l = LossSpec::from_table(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let c = family(0.25);
        let rule = DecisionRule::constant(2, 2, 1).unwrap();
        for v in c.vertices() {
            assert_eq!(expected_loss(v, &rule, &l).unwrap(), 0.0);
        }
    }

    #[test]
    fn infinite_loss_propagates_only_with_mass() {
        let l = LossSpec::from_table(vec![vec![0.0, f64::INFINITY], vec![1.0, 0.0]]).unwrap();
        let j = JointDistribution::new(1, 2, vec![1.0, 0.0]).unwrap();
        let predict_one = DecisionRule::constant(1, 2, 1).unwrap();
        // Pr(Y=0) = 1 and predicting 1 against Y=0 costs infinity.
        assert_eq!(expected_loss(&j, &predict_one, &l).unwrap(), f64::INFINITY);
        // But an all-mass-on-Y=1 joint never touches the infinite cell.
        let j1 = JointDistribution::new(1, 2, vec![0.0, 1.0]).unwrap();
        assert_eq!(expected_loss(&j1, &predict_one, &l).unwrap(), 0.0);
    }

    #[test]
    fn optimal_action_examples() {
        let zero_one = LossSpec::zero_one(2);
        let (a, v) = optimal_action(&binary_marginal(0.3), &zero_one).unwrap();
        assert_eq!(a, 0);
        assert!((v - 0.3).abs() < 1e-12);

        let asym = LossSpec::asymmetric(1.4).unwrap();
        let (a, v) = optimal_action(&binary_marginal(0.5), &asym).unwrap();
        assert_eq!(a, 0);
        assert!((v - 0.5).abs() < 1e-12);

        // Exact tie at p = 1/2 under 0/1 loss resolves to action 0.
        let (a, v) = optimal_action(&binary_marginal(0.5), &zero_one).unwrap();
        assert_eq!(a, 0);
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn worst_case_of_copy_rule() {
        let c = family(1.0 / 3.0);
        let l = LossSpec::zero_one(2);
        let copy = DecisionRule::deterministic(&[0, 1], 2).unwrap();
        // Per-vertex expected losses are 1/3, 0, 1, 2/3: copying the
        // observation is wrong everywhere on the anti-correlated vertex.
        let per_vertex: Vec<f64> = c
            .vertices()
            .iter()
            .map(|v| expected_loss(v, &copy, &l).unwrap())
            .collect();
        let mut sorted = per_vertex.clone();
        sorted.sort_by(f64::total_cmp);
        for (got, want) in sorted.iter().zip([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let (worst, witness) = worst_case_loss(&c, &copy, &l).unwrap();
        assert!((worst - 1.0).abs() < 1e-12);
        // The witness maps Y=0 to X=1 and Y=1 to X=0 (anti-correlated).
        let v = &c.vertices()[witness];
        assert!(v.prob(1, 0) > 0.0 && v.prob(0, 1) > 0.0);

        let constant = DecisionRule::constant(2, 2, 0).unwrap();
        let (worst, _) = worst_case_loss(&c, &constant, &l).unwrap();
        assert!((worst - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn worst_case_on_singleton_equals_expected_loss() {
        let j = JointDistribution::new(2, 2, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let c = CredalSet::singleton(j.clone());
        let l = LossSpec::zero_one(2);
        let rule = DecisionRule::deterministic(&[1, 0], 2).unwrap();
        let (worst, witness) = worst_case_loss(&c, &rule, &l).unwrap();
        assert_eq!(witness, 0);
        assert!((worst - expected_loss(&j, &rule, &l).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn global_minimax_is_constant_under_fixed_loss() {
        let c = family(1.0 / 3.0);
        let sol = global_minimax(&c, &LossSpec::zero_one(2)).unwrap();
        assert!((sol.value - 1.0 / 3.0).abs() < 1e-9);
        assert!(sol.rule.is_constant(1e-9));
        assert!((sol.rule.row(0).prob(0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn global_minimax_mismatch_scaled_loss() {
        // Observation-dependent loss where mistakes against a disagreeing
        // observation cost double: the optimal rule mixes the two
        // anti-constant deterministic rules with weights 1/3 and 2/3.
        let c = family(0.5);
        let sol = global_minimax(&c, &LossSpec::scaled_by_mismatch()).unwrap();
        assert!((sol.value - 2.0 / 3.0).abs() < 1e-9);
        assert!((sol.rule.row(0).prob(1) - 2.0 / 3.0).abs() < 1e-9);
        assert!((sol.rule.row(1).prob(1) - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn global_minimax_observation_scaled_loss() {
        // Scaling the loss by the observed value does not change the
        // minimax plan: predict the more likely outcome regardless.
        let c = family(0.4);
        let sol = global_minimax(&c, &LossSpec::scaled_by_observation()).unwrap();
        assert!(sol.rule.is_constant(1e-9));
        assert!((sol.rule.row(0).prob(0) - 1.0).abs() < 1e-9);
        assert!((sol.value - 0.8).abs() < 1e-9);
    }

    #[test]
    fn local_minimax_dilated_set_randomizes() {
        let c = family(1.0 / 3.0);
        let l = LossSpec::zero_one(2);
        for x in 0..2 {
            let sol = local_minimax(&c, x, &l).unwrap();
            assert!((sol.value - 0.5).abs() < 1e-9);
            assert!((sol.action.prob(0) - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn local_minimax_mismatch_scaled_loss() {
        let c = family(0.5);
        let l = LossSpec::scaled_by_mismatch();
        for x in 0..2 {
            let sol = local_minimax(&c, x, &l).unwrap();
            assert!((sol.value - 2.0 / 3.0).abs() < 1e-9);
            assert!((sol.action.prob(x) - 1.0 / 3.0).abs() < 1e-9);
            assert!((sol.action.prob(1 - x) - 2.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn local_minimax_singleton_is_conditional_bayes() {
        let j = JointDistribution::new(2, 2, vec![0.1, 0.2, 0.4, 0.3]).unwrap();
        let c = CredalSet::singleton(j.clone());
        let l = LossSpec::zero_one(2);
        for x in 0..2 {
            let sol = local_minimax(&c, x, &l).unwrap();
            let q = j.condition_on_x(x).unwrap();
            let (a, v) = optimal_action(&q, &l).unwrap();
            assert!((sol.value - v).abs() < 1e-9);
            assert!((sol.action.prob(a) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn inconsistency_under_fixed_loss() {
        let report = time_inconsistency_report(&family(1.0 / 3.0), &LossSpec::zero_one(2)).unwrap();
        assert!(report.inconsistent);
        assert!((report.global.value - 1.0 / 3.0).abs() < 1e-9);
        for l in &report.locals {
            assert!((l.value - 0.5).abs() < 1e-9);
            assert!(l.disagrees);
        }
        assert!((report.pay_not_to_know - 1.0 / 6.0).abs() < 1e-9);
    }

    #[test]
    fn consistency_under_mismatch_scaled_loss() {
        let report =
            time_inconsistency_report(&family(0.5), &LossSpec::scaled_by_mismatch()).unwrap();
        assert!(!report.inconsistent);
        assert!(report.pay_not_to_know.abs() < 1e-9);
    }

    #[test]
    fn singleton_report_is_consistent() {
        let j = JointDistribution::new(2, 2, vec![0.1, 0.2, 0.4, 0.3]).unwrap();
        let report =
            time_inconsistency_report(&CredalSet::singleton(j), &LossSpec::zero_one(2)).unwrap();
        assert!(!report.inconsistent);
        assert!(report.pay_not_to_know >= -1e-12);
    }

    #[test]
    fn infinite_loss_rejected_by_games() {
        let l = LossSpec::from_table(vec![vec![0.0, f64::INFINITY], vec![1.0, 0.0]]).unwrap();
        let c = family(0.5);
        assert!(matches!(
            global_minimax(&c, &l),
            Err(DecisionError::InfiniteLoss)
        ));
        assert!(matches!(
            local_minimax(&c, 0, &l),
            Err(DecisionError::InfiniteLoss)
        ));
    }
}
