use credal_bayes::{counts_from_sample, PriorSpec, SampleCounts};
use credal_core::{FiniteDistribution, ParamJoint};
use credal_decision::LossSpec;
use credal_oracle::{Strategy, TrueModel};
use serde::Deserialize;

use crate::error::CliError;

/// A joint distribution literal: outcome marginal plus the conditional
/// observation distributions.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub p: f64,
    pub given_y1: Vec<f64>,
    pub given_y0: Vec<f64>,
    #[serde(default)]
    pub label: Option<String>,
}

impl ModelSpec {
    pub fn to_param(&self) -> Result<ParamJoint, CliError> {
        let a = FiniteDistribution::new(self.given_y1.clone())?;
        let b = FiniteDistribution::new(self.given_y0.clone())?;
        Ok(ParamJoint::new(self.p, a, b)?)
    }
}

/// A loss entry: a finite number, or the string `"inf"` for +∞ (legal in
/// expectations, rejected by the game solver).
#[derive(Debug, Clone, Copy)]
pub struct LossValue(pub f64);

impl<'de> Deserialize<'de> for LossValue {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match serde_json::Value::deserialize(de)? {
            serde_json::Value::Number(n) => n
                .as_f64()
                .map(LossValue)
                .ok_or_else(|| D::Error::custom("loss entry out of range")),
            serde_json::Value::String(s) if matches!(s.as_str(), "inf" | "+inf" | "infinity") => {
                Ok(LossValue(f64::INFINITY))
            }
            other => Err(D::Error::custom(format!(
                "loss entry must be a number or \"inf\", got {other}"
            ))),
        }
    }
}

/// Loss table literal.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LossFile {
    ZeroOne,
    Asymmetric { alpha: f64 },
    ScaledByObservation,
    ScaledByMismatch,
    Table { rows: Vec<Vec<LossValue>> },
    ObservationTable { rows: Vec<Vec<Vec<LossValue>>> },
}

impl LossFile {
    pub fn build(&self, y_size: usize) -> Result<LossSpec, CliError> {
        let loss = match self {
            LossFile::ZeroOne => LossSpec::zero_one(y_size),
            LossFile::Asymmetric { alpha } => LossSpec::asymmetric(*alpha)?,
            LossFile::ScaledByObservation => LossSpec::scaled_by_observation(),
            LossFile::ScaledByMismatch => LossSpec::scaled_by_mismatch(),
            LossFile::Table { rows } => LossSpec::from_table(
                rows.iter()
                    .map(|r| r.iter().map(|v| v.0).collect())
                    .collect(),
            )?,
            LossFile::ObservationTable { rows } => LossSpec::from_observation_table(
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .map(|c| c.iter().map(|v| v.0).collect())
                            .collect()
                    })
                    .collect(),
            )?,
        };
        if loss.y_size() != y_size {
            return Err(CliError::Scenario(format!(
                "loss covers {} outcomes but the scenario has {y_size}",
                loss.y_size()
            )));
        }
        Ok(loss)
    }

    pub fn describe(&self) -> String {
        match self {
            LossFile::ZeroOne => "zero_one".into(),
            LossFile::Asymmetric { alpha } => format!("asymmetric({alpha})"),
            LossFile::ScaledByObservation => "scaled_by_observation".into(),
            LossFile::ScaledByMismatch => "scaled_by_mismatch".into(),
            LossFile::Table { .. } => "table".into(),
            LossFile::ObservationTable { .. } => "observation_table".into(),
        }
    }
}

/// Named prior literal.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum PriorFile {
    Uniform,
    Jeffreys,
    Ess { s: f64 },
    Custom { a: Vec<f64>, b: Vec<f64> },
    Hierarchical,
}

impl PriorFile {
    pub fn to_spec(&self) -> PriorSpec {
        match self {
            PriorFile::Uniform => PriorSpec::Uniform,
            PriorFile::Jeffreys => PriorSpec::Jeffreys,
            PriorFile::Ess { s } => PriorSpec::Ess(*s),
            PriorFile::Custom { a, b } => PriorSpec::Custom {
                a: a.clone(),
                b: b.clone(),
            },
            PriorFile::Hierarchical => PriorSpec::Hierarchical,
        }
    }
}

/// A scenario: every input a subcommand might need. Parsed strictly —
/// unknown fields are rejected, and there are no silent defaults for the
/// quantities conclusions are sensitive to (`p`, `n`, `alpha`).
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub x_size: Option<usize>,
    pub y_size: Option<usize>,
    pub p: Option<f64>,
    pub p_y: Option<Vec<f64>>,
    pub loss: Option<LossFile>,
    pub prior: Option<PriorFile>,
    pub true_model: Option<ModelSpec>,
    pub models: Option<Vec<ModelSpec>>,
    pub n: Option<u64>,
    pub alpha: Option<f64>,
    pub strategies: Option<Vec<String>>,
    pub counts: Option<Vec<Vec<u64>>>,
    pub data: Option<Vec<(usize, usize)>>,
    pub seed: Option<u64>,
    pub runs: Option<u64>,
    pub event: Option<Vec<usize>>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Scenario(format!("scenario: {e}")))
    }

    /// Observation alphabet size: explicit, or inferred from the model.
    pub fn x_size(&self) -> Result<usize, CliError> {
        if let Some(x) = self.x_size {
            if x == 0 {
                return Err(CliError::Scenario("x_size must be positive".into()));
            }
            return Ok(x);
        }
        if let Some(m) = &self.true_model {
            return Ok(m.given_y1.len());
        }
        Err(CliError::Scenario(
            "missing x_size (and no true_model to infer it from)".into(),
        ))
    }

    pub fn y_size(&self) -> usize {
        self.y_size
            .or(self.p_y.as_ref().map(Vec::len))
            .unwrap_or(2)
    }

    /// The known outcome marginal, from `p` or `p_y`.
    pub fn marginal(&self) -> Result<FiniteDistribution, CliError> {
        let dist = match (&self.p, &self.p_y) {
            (Some(_), Some(_)) => {
                return Err(CliError::Scenario(
                    "give either p or p_y, not both".into(),
                ))
            }
            (Some(p), None) => FiniteDistribution::bernoulli(*p)?,
            (None, Some(v)) => FiniteDistribution::new(v.clone())?,
            (None, None) => return Err(CliError::Scenario("missing p (or p_y)".into())),
        };
        if let Some(y) = self.y_size {
            if y != dist.support_size() {
                return Err(CliError::Scenario(format!(
                    "y_size {y} disagrees with the marginal over {} outcomes",
                    dist.support_size()
                )));
            }
        }
        Ok(dist)
    }

    pub fn loss(&self) -> Result<LossSpec, CliError> {
        match &self.loss {
            Some(l) => l.build(self.y_size()),
            None => Err(CliError::Scenario("missing loss".into())),
        }
    }

    pub fn prior_spec(&self) -> Result<PriorSpec, CliError> {
        match &self.prior {
            Some(p) => Ok(p.to_spec()),
            None => Err(CliError::Scenario("missing prior".into())),
        }
    }

    pub fn n(&self) -> Result<u64, CliError> {
        self.n
            .ok_or_else(|| CliError::Scenario("missing n (training horizon)".into()))
    }

    pub fn alpha(&self) -> Result<f64, CliError> {
        self.alpha
            .ok_or_else(|| CliError::Scenario("missing alpha (asymmetric cost)".into()))
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(20_240_420)
    }

    pub fn runs(&self) -> u64 {
        self.runs.unwrap_or(100_000)
    }

    pub fn event(&self) -> Vec<usize> {
        self.event.clone().unwrap_or_else(|| vec![1])
    }

    /// The candidate true models: `models` if present, else the single
    /// `true_model`. Labels default to `model-<i>`.
    pub fn true_models(&self) -> Result<Vec<(String, TrueModel)>, CliError> {
        let n = self.n()?;
        let specs: Vec<&ModelSpec> = match (&self.models, &self.true_model) {
            (Some(ms), _) if !ms.is_empty() => ms.iter().collect(),
            (_, Some(m)) => vec![m],
            _ => {
                return Err(CliError::Scenario(
                    "missing true_model (or models)".into(),
                ))
            }
        };
        let x_size = self.x_size()?;
        let mut out = Vec::with_capacity(specs.len());
        for (i, spec) in specs.iter().enumerate() {
            let param = spec.to_param()?;
            if param.x_size() != x_size {
                return Err(CliError::Scenario(format!(
                    "model {i} covers {} observations but the scenario has {x_size}",
                    param.x_size()
                )));
            }
            let label = spec.label.clone().unwrap_or_else(|| format!("model-{i}"));
            out.push((label, TrueModel::from_param(&param, n)));
        }
        Ok(out)
    }

    pub fn strategies(&self) -> Result<Vec<Strategy>, CliError> {
        let names = self.strategies.as_ref().ok_or_else(|| {
            CliError::Scenario("missing strategies".into())
        })?;
        names
            .iter()
            .map(|name| match name.as_str() {
                "ignore" => Ok(Strategy::Ignore),
                "bayes" => Ok(Strategy::Bayes(self.prior_spec()?)),
                "local_minimax" => Ok(Strategy::LocalMinimax),
                "global_minimax" => Ok(Strategy::GlobalMinimax),
                other => Err(CliError::Scenario(format!(
                    "unknown strategy {other:?}; expected ignore, bayes, local_minimax, global_minimax"
                ))),
            })
            .collect()
    }

    /// Observation counts for prediction: an `M x 2` table, or tallied
    /// from a `data` list of `[x, y]` pairs.
    pub fn sample_counts(&self) -> Result<SampleCounts, CliError> {
        let m = self.x_size()?;
        match (&self.counts, &self.data) {
            (Some(_), Some(_)) => Err(CliError::Scenario(
                "give either counts or data, not both".into(),
            )),
            (Some(rows), None) => {
                if rows.len() != m {
                    return Err(CliError::Scenario(format!(
                        "counts table has {} rows, expected {m}",
                        rows.len()
                    )));
                }
                let table = rows
                    .iter()
                    .map(|r| {
                        if r.len() != 2 {
                            return Err(CliError::Scenario(
                                "each counts row must be [n_{x,0}, n_{x,1}]".into(),
                            ));
                        }
                        Ok([r[0], r[1]])
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(SampleCounts::from_table(table)?)
            }
            (None, Some(pairs)) => Ok(counts_from_sample(pairs, m)?),
            (None, None) => Err(CliError::Scenario(
                "missing counts (or data) for prediction".into(),
            )),
        }
    }
}

/// Flag-level overrides applied on top of a scenario file or builtin.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub p: Option<f64>,
    pub n: Option<Vec<u64>>,
    pub alpha: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub runs: Option<u64>,
    pub counts: Option<Vec<Vec<u64>>>,
    pub event: Option<Vec<usize>>,
}

impl Overrides {
    /// Applies single-valued overrides; sweep lists (`n`, `alpha`) are the
    /// caller's business.
    pub fn apply(&self, scenario: &mut Scenario) {
        if let Some(p) = self.p {
            scenario.p = Some(p);
            scenario.p_y = None;
            // the outcome marginal is shared with the candidate models
            if let Some(m) = scenario.true_model.as_mut() {
                m.p = p;
            }
            if let Some(ms) = scenario.models.as_mut() {
                for m in ms {
                    m.p = p;
                }
            }
        }
        if let Some(ns) = &self.n {
            if ns.len() == 1 {
                scenario.n = Some(ns[0]);
            }
        }
        if let Some(alphas) = &self.alpha {
            if alphas.len() == 1 {
                scenario.alpha = Some(alphas[0]);
                if let Some(LossFile::Asymmetric { alpha }) = scenario.loss.as_mut() {
                    *alpha = alphas[0];
                }
            }
        }
        if let Some(seed) = self.seed {
            scenario.seed = Some(seed);
        }
        if let Some(runs) = self.runs {
            scenario.runs = Some(runs);
        }
        if let Some(counts) = &self.counts {
            scenario.counts = Some(counts.clone());
            scenario.data = None;
        }
        if let Some(event) = &self.event {
            scenario.event = Some(event.clone());
        }
    }
}
