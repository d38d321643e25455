use credal_bayes::BayesError;
use credal_core::CredalError;
use credal_decision::DecisionError;
use credal_oracle::OracleError;

/// CLI failure classes, one exit code each.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unparseable or inconsistent scenario. Exit 2.
    Scenario(String),
    /// Exact enumeration or game size over the cap. Exit 3.
    SizeCap(String),
    /// Numeric failure: conditioning undefined, infeasible program,
    /// infinite losses in a game. Exit 4.
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Scenario(_) => 2,
            CliError::SizeCap(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Scenario(_) => "invalid-scenario",
            CliError::SizeCap(_) => "size-cap",
            CliError::Numeric(_) => "numeric-failure",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Scenario(m) | CliError::SizeCap(m) | CliError::Numeric(m) => m,
        }
    }

    /// One machine-parsable line for stderr.
    pub fn render(&self) -> String {
        format!(
            "error: kind={} exit={} msg={:?}",
            self.kind(),
            self.exit_code(),
            self.message()
        )
    }
}

impl From<CredalError> for CliError {
    fn from(e: CredalError) -> Self {
        match e {
            CredalError::ConditioningUndefined { .. } => CliError::Numeric(e.to_string()),
            _ => CliError::Scenario(e.to_string()),
        }
    }
}

impl From<DecisionError> for CliError {
    fn from(e: DecisionError) -> Self {
        match e {
            DecisionError::SizeCap { .. } => CliError::SizeCap(e.to_string()),
            DecisionError::InfiniteLoss
            | DecisionError::NonFinitePayoff { .. }
            | DecisionError::Infeasible(_) => CliError::Numeric(e.to_string()),
            DecisionError::Credal(inner) => inner.into(),
            DecisionError::Dimension(_) => CliError::Scenario(e.to_string()),
        }
    }
}

impl From<BayesError> for CliError {
    fn from(e: BayesError) -> Self {
        match e {
            BayesError::Decision(inner) => inner.into(),
            _ => CliError::Scenario(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::SizeCap { .. } => CliError::SizeCap(e.to_string()),
            OracleError::Credal(inner) => inner.into(),
            OracleError::Decision(inner) => inner.into(),
            OracleError::Bayes(inner) => inner.into(),
            OracleError::UnsupportedStrategy(_) | OracleError::NoRuns => {
                CliError::Scenario(e.to_string())
            }
        }
    }
}
