use credal_bayes::{hierarchical_predictive, predictive};
use credal_core::CredalSet;
use credal_decision::time_inconsistency_report;
use credal_oracle::{simulate, strategy_risk, trigger_report, Strategy, TrueModel};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{cell, num, Report};
use crate::scenario::Scenario;

fn scenario_echo(scenario: &Scenario, fields: &[(&str, Value)]) -> Value {
    let mut obj = serde_json::Map::new();
    if let Ok(x) = scenario.x_size() {
        obj.insert("x_size".into(), json!(x));
    }
    obj.insert("y_size".into(), json!(scenario.y_size()));
    if let Some(p) = scenario.p {
        obj.insert("p".into(), num(p));
    }
    if let Some(p_y) = &scenario.p_y {
        obj.insert("p_y".into(), json!(p_y.iter().map(|&v| num(v)).collect::<Vec<_>>()));
    }
    if let Some(loss) = &scenario.loss {
        obj.insert("loss".into(), json!(loss.describe()));
    }
    if let Some(prior) = &scenario.prior {
        obj.insert("prior".into(), json!(prior.to_spec().name()));
    }
    for (k, v) in fields {
        obj.insert((*k).into(), v.clone());
    }
    Value::Object(obj)
}

fn assignment_label(assignment: &[usize]) -> String {
    assignment.iter().map(usize::to_string).collect()
}

/// `minimax`: global rule, per-observation local actions, inconsistency
/// flag, and the pay-not-to-know premium.
pub fn minimax(scenario: &Scenario) -> Result<Report, CliError> {
    let p_y = scenario.marginal()?;
    let x_size = scenario.x_size()?;
    let loss = scenario.loss()?;
    let family = CredalSet::marginal_family(&p_y, x_size)?;
    let report = time_inconsistency_report(&family, &loss)?;

    let actions = loss.action_count();
    let global_rows: Vec<Value> = (0..x_size)
        .map(|x| {
            json!((0..actions)
                .map(|a| num(report.global.rule.row(x).prob(a)))
                .collect::<Vec<_>>())
        })
        .collect();
    let mixture: Vec<Value> = report
        .global
        .deterministic_mixture
        .iter()
        .map(|rw| {
            json!({
                "rule": assignment_label(&rw.assignment),
                "weight": num(rw.weight),
            })
        })
        .collect();
    let locals: Vec<Value> = report
        .locals
        .iter()
        .map(|l| {
            json!({
                "x": l.x,
                "action": (0..actions).map(|a| num(l.action.prob(a))).collect::<Vec<_>>(),
                "value": num(l.value),
                "disagrees": l.disagrees,
            })
        })
        .collect();
    let results = json!({
        "global": {
            "value": num(report.global.value),
            "rule": global_rows,
            "mixture": mixture,
            "worst_case_vertex": report.global.witness,
        },
        "locals": locals,
        "inconsistent": report.inconsistent,
        "pay_not_to_know": num(report.pay_not_to_know),
    });

    let mut header = vec!["x".to_string()];
    header.extend((0..actions).map(|a| format!("global_a{a}")));
    header.extend((0..actions).map(|a| format!("local_a{a}")));
    header.extend(
        ["local_value", "disagrees", "global_value", "pay_not_to_know", "inconsistent"]
            .map(String::from),
    );
    let csv_rows = report
        .locals
        .iter()
        .map(|l| {
            let mut row = vec![l.x.to_string()];
            row.extend((0..actions).map(|a| cell(report.global.rule.row(l.x).prob(a))));
            row.extend((0..actions).map(|a| cell(l.action.prob(a))));
            row.push(cell(l.value));
            row.push(l.disagrees.to_string());
            row.push(cell(report.global.value));
            row.push(cell(report.pay_not_to_know));
            row.push(report.inconsistent.to_string());
            row
        })
        .collect();

    Ok(Report {
        subcommand: "minimax",
        scenario: scenario_echo(scenario, &[]),
        results,
        csv_header: header,
        csv_rows,
    })
}

/// `dilation`: prior and conditional probability intervals of an outcome
/// event, with strict-widening flags.
pub fn dilation(scenario: &Scenario) -> Result<Report, CliError> {
    let p_y = scenario.marginal()?;
    let x_size = scenario.x_size()?;
    let event = scenario.event();
    let family = CredalSet::marginal_family(&p_y, x_size)?;
    let report = family.dilation_report(&event)?;

    let per_obs: Vec<Value> = report
        .per_observation
        .iter()
        .map(|o| match o.interval {
            Some(iv) => json!({
                "x": o.x,
                "admissible": true,
                "lower": num(iv.lower),
                "upper": num(iv.upper),
                "dilates": o.dilates,
            }),
            None => json!({"x": o.x, "admissible": false, "dilates": false}),
        })
        .collect();
    let results = json!({
        "event": report.event,
        "prior": {"lower": num(report.prior.lower), "upper": num(report.prior.upper)},
        "per_observation": per_obs,
        "dilates": report.dilates,
    });

    let header = [
        "x",
        "admissible",
        "lower",
        "upper",
        "dilates",
        "prior_lower",
        "prior_upper",
        "overall_dilates",
    ]
    .map(String::from)
    .to_vec();
    let csv_rows = report
        .per_observation
        .iter()
        .map(|o| {
            vec![
                o.x.to_string(),
                o.interval.is_some().to_string(),
                o.interval.map_or(String::new(), |iv| cell(iv.lower)),
                o.interval.map_or(String::new(), |iv| cell(iv.upper)),
                o.dilates.to_string(),
                cell(report.prior.lower),
                cell(report.prior.upper),
                report.dilates.to_string(),
            ]
        })
        .collect();

    Ok(Report {
        subcommand: "dilation",
        scenario: scenario_echo(scenario, &[("event", json!(event))]),
        results,
        csv_header: header,
        csv_rows,
    })
}

/// `predict`: posterior predictive per next-observation value for the
/// scenario's counts.
pub fn predict(scenario: &Scenario) -> Result<Report, CliError> {
    let p = scenario
        .p
        .ok_or_else(|| CliError::Scenario("predict requires a scalar p".into()))?;
    let counts = scenario.sample_counts()?;
    let spec = scenario.prior_spec()?;
    let m = counts.m();

    let (q, weights): (Vec<f64>, Option<Vec<f64>>) = match spec.build(m, p)? {
        Some(prior) => ((0..m).map(|k| predictive(&prior, &counts).map(|d| d.q(k))).collect::<Result<_, _>>()?, None),
        None => {
            let h = hierarchical_predictive(p, &counts)?;
            ((0..m).map(|k| h.q.q(k)).collect(), Some(h.full_model_weight))
        }
    };

    let per_k: Vec<Value> = (0..m)
        .map(|k| {
            let mut obj = serde_json::Map::new();
            obj.insert("k".into(), json!(k));
            obj.insert("q".into(), num(q[k]));
            obj.insert("odds".into(), num(q[k] / (1.0 - q[k])));
            if let Some(w) = &weights {
                obj.insert("full_model_weight".into(), num(w[k]));
            }
            Value::Object(obj)
        })
        .collect();
    let counts_echo: Vec<Vec<u64>> = (0..m).map(|j| vec![counts.count(j, 0), counts.count(j, 1)]).collect();
    let results = json!({"per_observation": per_k});

    let mut header = vec!["k".to_string(), "q".to_string(), "odds".to_string()];
    if weights.is_some() {
        header.push("full_model_weight".into());
    }
    let csv_rows = (0..m)
        .map(|k| {
            let mut row = vec![k.to_string(), cell(q[k]), cell(q[k] / (1.0 - q[k]))];
            if let Some(w) = &weights {
                row.push(cell(w[k]));
            }
            row
        })
        .collect();

    Ok(Report {
        subcommand: "predict",
        scenario: scenario_echo(scenario, &[("counts", json!(counts_echo))]),
        results,
        csv_header: header,
        csv_rows,
    })
}

/// `beta`: trigger probability and the resulting exact risk gap, swept
/// over horizons and thresholds.
pub fn beta(
    scenario: &Scenario,
    n_sweep: &[u64],
    alpha_sweep: &[f64],
) -> Result<Report, CliError> {
    let p = scenario
        .p
        .ok_or_else(|| CliError::Scenario("beta requires a scalar p".into()))?;
    let x_size = scenario.x_size()?;
    let spec = scenario.prior_spec()?;
    let prior = spec.build(x_size, p)?.ok_or_else(|| {
        CliError::Scenario("beta requires a Dirichlet-product prior, not hierarchical".into())
    })?;
    let models = scenario.true_models()?;
    if models.len() != 1 {
        return Err(CliError::Scenario(
            "beta runs against a single true_model".into(),
        ));
    }
    let base_model = &models[0].1;

    let mut rows_json = Vec::new();
    let mut csv_rows = Vec::new();
    for &n in n_sweep {
        let model = TrueModel::new(base_model.joint().clone(), n);
        for &alpha in alpha_sweep {
            let loss = credal_decision::LossSpec::asymmetric(alpha)?;
            let trig = trigger_report(&model, &prior, alpha)?;
            let risk_ignore = strategy_risk(&model, &Strategy::Ignore, &loss)?;
            let risk_bayes =
                strategy_risk(&model, &Strategy::Bayes(spec.clone()), &loss)?;
            let gap = risk_bayes - risk_ignore;
            let relative = gap / risk_ignore;
            rows_json.push(json!({
                "n": n,
                "alpha": num(alpha),
                "beta": num(trig.averaged),
                "beta_per_k": trig.per_k.iter().map(|&b| num(b)).collect::<Vec<_>>(),
                "risk_ignore": num(risk_ignore),
                "risk_bayes": num(risk_bayes),
                "gap": num(gap),
                "relative_gap": num(relative),
            }));
            let mut row = vec![n.to_string(), cell(alpha), cell(trig.averaged)];
            row.extend(trig.per_k.iter().map(|&b| cell(b)));
            row.extend([
                cell(risk_ignore),
                cell(risk_bayes),
                cell(gap),
                cell(relative),
            ]);
            csv_rows.push(row);
        }
    }

    let mut header = vec!["n".to_string(), "alpha".to_string(), "beta".to_string()];
    header.extend((0..x_size).map(|k| format!("beta_k{k}")));
    header.extend(["risk_ignore", "risk_bayes", "gap", "relative_gap"].map(String::from));

    Ok(Report {
        subcommand: "beta",
        scenario: scenario_echo(
            scenario,
            &[
                ("model", json!(models[0].0)),
                ("n_sweep", json!(n_sweep)),
                ("alpha_sweep", json!(alpha_sweep.iter().map(|&a| num(a)).collect::<Vec<_>>())),
            ],
        ),
        results: json!({"rows": rows_json}),
        csv_header: header,
        csv_rows,
    })
}

/// `risk`: exact strategy risks and the regret table over candidate
/// models.
pub fn risk(scenario: &Scenario) -> Result<Report, CliError> {
    let loss = scenario.loss()?;
    let strategies = scenario.strategies()?;
    let models = scenario.true_models()?;
    let table = credal_oracle::regret_table(
        &models.iter().map(|(_, m)| m.clone()).collect::<Vec<_>>(),
        &strategies,
        &loss,
    )?;

    let mut rows_json = Vec::new();
    let mut csv_rows = Vec::new();
    for (i, (label, _)) in models.iter().enumerate() {
        for (s, strategy) in strategies.iter().enumerate() {
            rows_json.push(json!({
                "model": label,
                "strategy": strategy.name(),
                "risk": num(table.risks[i][s]),
                "best_risk": num(table.best_per_model[i]),
                "regret": num(table.regret[i][s]),
                "worst_regret_of_strategy": num(table.worst_regret_per_strategy[s]),
            }));
            csv_rows.push(vec![
                label.clone(),
                strategy.name(),
                cell(table.risks[i][s]),
                cell(table.best_per_model[i]),
                cell(table.regret[i][s]),
                cell(table.worst_regret_per_strategy[s]),
            ]);
        }
    }

    Ok(Report {
        subcommand: "risk",
        scenario: scenario_echo(
            scenario,
            &[
                ("n", json!(scenario.n()?)),
                ("models", json!(models.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>())),
            ],
        ),
        results: json!({"rows": rows_json}),
        csv_header: ["model", "strategy", "risk", "best_risk", "regret", "worst_regret_of_strategy"]
            .map(String::from)
            .to_vec(),
        csv_rows,
    })
}

/// `simulate`: seeded Monte Carlo versus the exact risk, per model and
/// strategy.
pub fn simulate_cmd(scenario: &Scenario) -> Result<Report, CliError> {
    let loss = scenario.loss()?;
    let strategies = scenario.strategies()?;
    let models = scenario.true_models()?;
    let runs = scenario.runs();
    let seed = scenario.seed();

    let mut rows_json = Vec::new();
    let mut csv_rows = Vec::new();
    for (label, model) in &models {
        for strategy in &strategies {
            let exact = strategy_risk(model, strategy, &loss)?;
            let est = simulate(model, strategy, &loss, runs, seed)?;
            let z = if est.std_error > 0.0 {
                (est.mean - exact) / est.std_error
            } else {
                0.0
            };
            rows_json.push(json!({
                "model": label,
                "strategy": strategy.name(),
                "runs": runs,
                "seed": seed,
                "mean": num(est.mean),
                "std_error": num(est.std_error),
                "exact_risk": num(exact),
                "z": num(z),
            }));
            csv_rows.push(vec![
                label.clone(),
                strategy.name(),
                runs.to_string(),
                seed.to_string(),
                cell(est.mean),
                cell(est.std_error),
                cell(exact),
                cell(z),
            ]);
        }
    }

    Ok(Report {
        subcommand: "simulate",
        scenario: scenario_echo(
            scenario,
            &[("n", json!(scenario.n()?)), ("runs", json!(runs)), ("seed", json!(seed))],
        ),
        results: json!({"rows": rows_json}),
        csv_header: ["model", "strategy", "runs", "seed", "mean", "std_error", "exact_risk", "z"]
            .map(String::from)
            .to_vec(),
        csv_rows,
    })
}
