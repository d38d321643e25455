//! `credal-decide`: prediction decisions under set-valued uncertainty.
//!
//! Subcommands compute global/local minimax rules, dilation reports,
//! Bayesian predictives, trigger-probability sweeps, exact strategy risks,
//! and seeded Monte Carlo validation. Reports go to stdout (or `--out`) as
//! JSON or CSV with numbers at 12 significant digits.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use credal_cli::builtins::{builtin, BUILTIN_NAMES};
use credal_cli::commands;
use credal_cli::report::Format;
use credal_cli::scenario::{Overrides, Scenario};
use credal_cli::CliError;

#[derive(Parser)]
#[command(
    name = "credal-decide",
    version,
    about = "Prediction decisions under credal (set-valued) uncertainty"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (strict JSON schema).
    #[arg(long, value_name = "PATH", conflicts_with = "builtin")]
    scenario: Option<String>,

    /// Built-in scenario name.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,

    /// Override Pr(Y=1).
    #[arg(long)]
    p: Option<f64>,

    /// Override the training horizon; `beta` accepts a comma list.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u64>>,

    /// Override the asymmetric cost; `beta` accepts a comma list.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,

    /// Override the simulation seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Override the number of simulation runs.
    #[arg(long)]
    runs: Option<u64>,

    /// Counts table as `n00,n01;n10,n11;...` (one `x` per `;`).
    #[arg(long, value_name = "TABLE")]
    counts: Option<String>,

    /// Outcome event as a comma list of y values (dilation only).
    #[arg(long, value_delimiter = ',')]
    event: Option<Vec<usize>>,

    /// Report format.
    #[arg(long, default_value = "json")]
    format: String,

    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Global and local minimax rules with a time-inconsistency report.
    Minimax(Common),
    /// Prior and conditional probability intervals with dilation flags.
    Dilation(Common),
    /// Bayesian posterior predictive for given counts.
    Predict(Common),
    /// Trigger probability sweep over horizons and thresholds.
    Beta(Common),
    /// Exact strategy risks and regret table.
    Risk(Common),
    /// Seeded Monte Carlo estimates against exact risks.
    Simulate(Common),
}

fn parse_counts(text: &str) -> Result<Vec<Vec<u64>>, CliError> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<u64>()
                        .map_err(|e| CliError::Scenario(format!("counts: {e}")))
                })
                .collect()
        })
        .collect()
}

fn load_scenario(common: &Common) -> Result<Scenario, CliError> {
    let mut scenario = match (&common.scenario, &common.builtin) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Scenario(format!("cannot read {path}: {e}")))?;
            Scenario::from_json(&text)?
        }
        (None, Some(name)) => builtin(name)?,
        (None, None) => {
            return Err(CliError::Scenario(format!(
                "give --scenario PATH or --builtin NAME (one of {BUILTIN_NAMES:?})"
            )))
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let overrides = Overrides {
        p: common.p,
        n: common.n.clone(),
        alpha: common.alpha.clone(),
        seed: common.seed,
        runs: common.runs,
        counts: common.counts.as_deref().map(parse_counts).transpose()?,
        event: common.event.clone(),
    };
    overrides.apply(&mut scenario);
    Ok(scenario)
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("CREDAL_DECIDE_THREADS") {
        let threads: usize = raw.parse().map_err(|_| {
            CliError::Scenario(format!(
                "CREDAL_DECIDE_THREADS={raw:?} must be a positive integer"
            ))
        })?;
        if threads == 0 {
            return Err(CliError::Scenario(
                "CREDAL_DECIDE_THREADS must be positive".into(),
            ));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Scenario(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run() -> Result<(), CliError> {
    configure_threads()?;
    let cli = Cli::parse();
    let (common, report) = match &cli.command {
        Command::Minimax(c) => (c, commands::minimax(&load_scenario(c)?)?),
        Command::Dilation(c) => (c, commands::dilation(&load_scenario(c)?)?),
        Command::Predict(c) => (c, commands::predict(&load_scenario(c)?)?),
        Command::Beta(c) => {
            let scenario = load_scenario(c)?;
            let n_sweep = match &c.n {
                Some(ns) if !ns.is_empty() => ns.clone(),
                _ => vec![scenario.n()?],
            };
            let alpha_sweep = match &c.alpha {
                Some(al) if !al.is_empty() => al.clone(),
                _ => vec![scenario.alpha()?],
            };
            (c, commands::beta(&scenario, &n_sweep, &alpha_sweep)?)
        }
        Command::Risk(c) => (c, commands::risk(&load_scenario(c)?)?),
        Command::Simulate(c) => (c, commands::simulate_cmd(&load_scenario(c)?)?),
    };
    let format: Format = common
        .format
        .parse()
        .map_err(CliError::Scenario)?;
    let text = report.render(format);
    match &common.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Scenario(format!("cannot write {path}: {e}")))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.render());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
