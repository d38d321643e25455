use crate::BayesError;

/// Independent Dirichlet priors on the observation distributions given
/// `Y = 1` (parameters `a`) and `Y = 0` (parameters `b`), with the outcome
/// marginal `p = Pr(Y = 1)` known and strictly interior.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletProductPrior {
    a: Vec<f64>,
    b: Vec<f64>,
    p: f64,
}

impl DirichletProductPrior {
    pub fn new(a: Vec<f64>, b: Vec<f64>, p: f64) -> Result<Self, BayesError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(BayesError::InvalidPrior(format!(
                "Pr(Y=1) = {p} must lie strictly inside (0, 1)"
            )));
        }
        if a.is_empty() || a.len() != b.len() {
            return Err(BayesError::InvalidPrior(format!(
                "parameter vectors must be non-empty and equal length, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        for &v in a.iter().chain(&b) {
            if !(v.is_finite() && v > 0.0) {
                return Err(BayesError::InvalidPrior(format!(
                    "Dirichlet parameter {v} must be finite and positive"
                )));
            }
        }
        Ok(Self { a, b, p })
    }

    /// All parameters 1: uniform over each simplex.
    pub fn uniform(m: usize, p: f64) -> Result<Self, BayesError> {
        Self::new(vec![1.0; m], vec![1.0; m], p)
    }

    /// All parameters 1/2.
    pub fn jeffreys(m: usize, p: f64) -> Result<Self, BayesError> {
        Self::new(vec![0.5; m], vec![0.5; m], p)
    }

    /// Equivalent sample size `s`: all parameters `s / m`, so each
    /// conditional carries total prior mass `s`.
    pub fn ess(m: usize, p: f64, s: f64) -> Result<Self, BayesError> {
        if !(s.is_finite() && s > 0.0) {
            return Err(BayesError::InvalidPrior(format!(
                "equivalent sample size {s} must be finite and positive"
            )));
        }
        Self::new(vec![s / m as f64; m], vec![s / m as f64; m], p)
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Parameter for `Pr(X = j | Y = 1)`.
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// Parameter for `Pr(X = j | Y = 0)`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn a_sum(&self) -> f64 {
        self.a.iter().sum()
    }

    pub fn b_sum(&self) -> f64 {
        self.b.iter().sum()
    }
}

/// A named prior choice, resolvable once the alphabet size and outcome
/// marginal are known. `Hierarchical` is the 50/50 mixture of the uniform
/// Dirichlet-product model with the X-independent-of-Y model.
#[derive(Debug, Clone, PartialEq)]
pub enum PriorSpec {
    Uniform,
    Jeffreys,
    Ess(f64),
    Custom { a: Vec<f64>, b: Vec<f64> },
    Hierarchical,
}

impl PriorSpec {
    /// The Dirichlet-product prior this spec names, or `None` for the
    /// hierarchical mixture (which is not of product form).
    pub fn build(&self, m: usize, p: f64) -> Result<Option<DirichletProductPrior>, BayesError> {
        match self {
            PriorSpec::Uniform => DirichletProductPrior::uniform(m, p).map(Some),
            PriorSpec::Jeffreys => DirichletProductPrior::jeffreys(m, p).map(Some),
            PriorSpec::Ess(s) => DirichletProductPrior::ess(m, p, *s).map(Some),
            PriorSpec::Custom { a, b } => {
                if a.len() != m {
                    return Err(BayesError::Dimension(format!(
                        "custom prior has {} parameters, alphabet size is {m}",
                        a.len()
                    )));
                }
                DirichletProductPrior::new(a.clone(), b.clone(), p).map(Some)
            }
            PriorSpec::Hierarchical => Ok(None),
        }
    }

    pub fn name(&self) -> String {
        match self {
            PriorSpec::Uniform => "uniform".into(),
            PriorSpec::Jeffreys => "jeffreys".into(),
            PriorSpec::Ess(s) => format!("ess({s})"),
            PriorSpec::Custom { .. } => "custom".into(),
            PriorSpec::Hierarchical => "hierarchical".into(),
        }
    }
}
