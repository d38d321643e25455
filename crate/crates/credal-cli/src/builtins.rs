use crate::error::CliError;
use crate::scenario::{LossFile, ModelSpec, PriorFile, Scenario};

/// Names of the built-in scenarios.
pub const BUILTIN_NAMES: [&str; 5] = ["dilation-demo", "two-obs", "beta-35", "obsloss", "regret"];

fn independent_model(p: f64) -> ModelSpec {
    ModelSpec {
        p,
        given_y1: vec![0.5, 0.5],
        given_y0: vec![0.5, 0.5],
        label: Some("independent".into()),
    }
}

fn correlated_model(p: f64) -> ModelSpec {
    ModelSpec {
        p,
        given_y1: vec![0.0, 1.0],
        given_y0: vec![1.0, 0.0],
        label: Some("correlated".into()),
    }
}

/// A complete scenario per builtin; command-line overrides apply on top.
pub fn builtin(name: &str) -> Result<Scenario, CliError> {
    let strategies_all = vec![
        "ignore".to_string(),
        "bayes".to_string(),
        "local_minimax".to_string(),
        "global_minimax".to_string(),
    ];
    let base = Scenario {
        x_size: Some(2),
        y_size: Some(2),
        prior: Some(PriorFile::Uniform),
        n: Some(4),
        seed: Some(20_240_420),
        runs: Some(100_000),
        ..Scenario::default()
    };
    let scenario = match name {
        // Fixed marginal, binary observation, classification loss: every
        // observation dilates the outcome's interval to [0, 1].
        "dilation-demo" => Scenario {
            p: Some(0.3),
            loss: Some(LossFile::ZeroOne),
            true_model: Some(independent_model(0.3)),
            strategies: Some(strategies_all),
            event: Some(vec![1]),
            ..base
        },
        // One (1,1) pair then observe X=1 again: the predictive becomes
        // 4p/(p+3), so the second observation is not ignored.
        "two-obs" => Scenario {
            p: Some(0.5),
            loss: Some(LossFile::ZeroOne),
            true_model: Some(correlated_model(0.5)),
            data: Some(vec![(1, 1)]),
            n: Some(1),
            strategies: Some(vec!["ignore".into(), "bayes".into()]),
            ..base
        },
        // Asymmetric costs at n=4: how often the posterior odds cross the
        // threshold, and what that deviation costs against independence.
        "beta-35" => Scenario {
            p: Some(0.5),
            loss: Some(LossFile::Asymmetric { alpha: 1.4 }),
            alpha: Some(1.4),
            true_model: Some(independent_model(0.5)),
            strategies: Some(vec!["ignore".into(), "bayes".into()]),
            ..base
        },
        // Observation-dependent loss where mistakes against a disagreeing
        // observation cost double: randomization helps and the global and
        // local minimax solutions coincide.
        "obsloss" => Scenario {
            p: Some(0.5),
            loss: Some(LossFile::ScaledByMismatch),
            true_model: Some(independent_model(0.5)),
            strategies: Some(vec!["global_minimax".into(), "local_minimax".into()]),
            ..base
        },
        // Risk and regret of each strategy against the independent and the
        // perfectly correlated models.
        "regret" => Scenario {
            p: Some(0.5),
            loss: Some(LossFile::Asymmetric { alpha: 1.4 }),
            alpha: Some(1.4),
            true_model: Some(independent_model(0.5)),
            models: Some(vec![independent_model(0.5), correlated_model(0.5)]),
            strategies: Some(strategies_all),
            ..base
        },
        other => {
            return Err(CliError::Scenario(format!(
                "unknown builtin {other:?}; expected one of {BUILTIN_NAMES:?}"
            )))
        }
    };
    Ok(scenario)
}
