use crate::error::CredalError;
use crate::{CONSTRUCTION_TOL, SUPPORT_TOL};

/// A probability vector over a finite outcome set `{0, .., n-1}`.
///
/// Entries are non-negative and sum to one within [`CONSTRUCTION_TOL`]; the
/// stored values are kept exactly as given (no renormalisation).
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    mass: Vec<f64>,
}

impl FiniteDistribution {
    pub fn new(mass: Vec<f64>) -> Result<Self, CredalError> {
        if mass.is_empty() {
            return Err(CredalError::Dimension("empty support".into()));
        }
        let mut total = 0.0;
        for (i, &m) in mass.iter().enumerate() {
            if !m.is_finite() || m < 0.0 {
                return Err(CredalError::InvalidDistribution(format!(
                    "entry {i} is {m}, must be a finite non-negative probability"
                )));
            }
            total += m;
        }
        if (total - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(CredalError::InvalidDistribution(format!(
                "entries sum to {total}, expected 1"
            )));
        }
        Ok(Self { mass })
    }

    /// Point mass on `at` within a support of size `n`.
    pub fn delta(n: usize, at: usize) -> Result<Self, CredalError> {
        if at >= n {
            return Err(CredalError::IndexOutOfRange(format!(
                "point mass at {at} with support size {n}"
            )));
        }
        let mut mass = vec![0.0; n];
        mass[at] = 1.0;
        Ok(Self { mass })
    }

    pub fn uniform(n: usize) -> Result<Self, CredalError> {
        if n == 0 {
            return Err(CredalError::Dimension("empty support".into()));
        }
        Ok(Self {
            mass: vec![1.0 / n as f64; n],
        })
    }

    /// Binary distribution with `Pr(1) = p`.
    pub fn bernoulli(p: f64) -> Result<Self, CredalError> {
        Self::new(vec![1.0 - p, p])
    }

    pub fn support_size(&self) -> usize {
        self.mass.len()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.mass[i]
    }

    /// Probability of an event given as a set of outcome indices.
    /// Duplicate indices are counted once.
    pub fn event_prob(&self, event: &[usize]) -> Result<f64, CredalError> {
        let mask = event_mask(event, self.mass.len())?;
        Ok(self
            .mass
            .iter()
            .zip(&mask)
            .filter(|(_, &inside)| inside)
            .map(|(&m, _)| m)
            .sum())
    }

    /// True when every entry is within `tol` of the other distribution's.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.mass.len() == other.mass.len()
            && self
                .mass
                .iter()
                .zip(&other.mass)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// Total variation distance to another distribution on the same support.
    pub fn total_variation(&self, other: &Self) -> Result<f64, CredalError> {
        if self.mass.len() != other.mass.len() {
            return Err(CredalError::Dimension(format!(
                "support sizes {} vs {}",
                self.mass.len(),
                other.mass.len()
            )));
        }
        Ok(self
            .mass
            .iter()
            .zip(&other.mass)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            / 2.0)
    }
}

pub(crate) fn event_mask(event: &[usize], n: usize) -> Result<Vec<bool>, CredalError> {
    let mut mask = vec![false; n];
    for &y in event {
        if y >= n {
            return Err(CredalError::IndexOutOfRange(format!(
                "event outcome {y} with support size {n}"
            )));
        }
        mask[y] = true;
    }
    Ok(mask)
}

/// A joint distribution over `X × Y` with `X` of size `x_size` and `Y` of
/// size `y_size`, stored row-major by `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    x_size: usize,
    y_size: usize,
    mass: Vec<f64>,
}

impl JointDistribution {
    pub fn new(x_size: usize, y_size: usize, mass: Vec<f64>) -> Result<Self, CredalError> {
        if x_size == 0 || y_size == 0 {
            return Err(CredalError::Dimension(format!(
                "joint must have positive dimensions, got {x_size}x{y_size}"
            )));
        }
        if mass.len() != x_size * y_size {
            return Err(CredalError::Dimension(format!(
                "mass has {} cells, expected {}",
                mass.len(),
                x_size * y_size
            )));
        }
        let mut total = 0.0;
        for &m in &mass {
            if !m.is_finite() || m < 0.0 {
                return Err(CredalError::InvalidDistribution(format!(
                    "cell mass {m} must be a finite non-negative probability"
                )));
            }
            total += m;
        }
        if (total - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(CredalError::InvalidDistribution(format!(
                "total mass {total}, expected 1"
            )));
        }
        Ok(Self {
            x_size,
            y_size,
            mass,
        })
    }

    /// Product of independent marginals.
    pub fn independent(
        p_x: &FiniteDistribution,
        p_y: &FiniteDistribution,
    ) -> Result<Self, CredalError> {
        let mut mass = Vec::with_capacity(p_x.support_size() * p_y.support_size());
        for x in 0..p_x.support_size() {
            for y in 0..p_y.support_size() {
                mass.push(p_x.prob(x) * p_y.prob(y));
            }
        }
        Self::new(p_x.support_size(), p_y.support_size(), mass)
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.mass[x * self.y_size + y]
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Column sums: `Pr(Y = y)`.
    pub fn y_marginal(&self) -> FiniteDistribution {
        let mut m = vec![0.0; self.y_size];
        for x in 0..self.x_size {
            for (y, acc) in m.iter_mut().enumerate() {
                *acc += self.prob(x, y);
            }
        }
        FiniteDistribution { mass: m }
    }

    /// Row sums: `Pr(X = x)`.
    pub fn x_marginal(&self) -> FiniteDistribution {
        let mut m = vec![0.0; self.x_size];
        for (x, acc) in m.iter_mut().enumerate() {
            for y in 0..self.y_size {
                *acc += self.prob(x, y);
            }
        }
        FiniteDistribution { mass: m }
    }

    /// `Pr(Y = · | X = x)`, or `None` when `Pr(X = x)` is at most
    /// [`SUPPORT_TOL`].
    pub fn condition_on_x(&self, x: usize) -> Option<FiniteDistribution> {
        let px: f64 = (0..self.y_size).map(|y| self.prob(x, y)).sum();
        if px <= SUPPORT_TOL {
            return None;
        }
        let mass = (0..self.y_size).map(|y| self.prob(x, y) / px).collect();
        Some(FiniteDistribution { mass })
    }

    /// Shannon entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        self.mass
            .iter()
            .filter(|&&m| m > 0.0)
            .map(|&m| -m * m.log2())
            .sum()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.x_size == other.x_size
            && self.y_size == other.y_size
            && self
                .mass
                .iter()
                .zip(&other.mass)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// A joint over `{0..M-1} × {0,1}` parameterised by the `Y`-marginal
/// `p = Pr(Y = 1)` and the conditional observation distributions given each
/// value of `Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamJoint {
    p: f64,
    given_y1: FiniteDistribution,
    given_y0: FiniteDistribution,
}

impl ParamJoint {
    /// `given_y1[j] = Pr(X = j | Y = 1)` and `given_y0[j] = Pr(X = j | Y = 0)`.
    /// Requires `0 < p < 1` and matching observation alphabets.
    pub fn new(
        p: f64,
        given_y1: FiniteDistribution,
        given_y0: FiniteDistribution,
    ) -> Result<Self, CredalError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(CredalError::InvalidDistribution(format!(
                "Pr(Y=1) = {p} must lie strictly inside (0, 1)"
            )));
        }
        if given_y1.support_size() != given_y0.support_size() {
            return Err(CredalError::Dimension(format!(
                "conditional supports disagree: {} vs {}",
                given_y1.support_size(),
                given_y0.support_size()
            )));
        }
        Ok(Self {
            p,
            given_y1,
            given_y0,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn x_size(&self) -> usize {
        self.given_y1.support_size()
    }

    pub fn given_y1(&self) -> &FiniteDistribution {
        &self.given_y1
    }

    pub fn given_y0(&self) -> &FiniteDistribution {
        &self.given_y0
    }

    /// The induced joint: `Pr(X=j, Y=1) = p * given_y1[j]` and
    /// `Pr(X=j, Y=0) = (1-p) * given_y0[j]`.
    pub fn to_joint(&self) -> JointDistribution {
        let m = self.x_size();
        let mut mass = vec![0.0; m * 2];
        for j in 0..m {
            mass[j * 2] = (1.0 - self.p) * self.given_y0.prob(j);
            mass[j * 2 + 1] = self.p * self.given_y1.prob(j);
        }
        JointDistribution {
            x_size: m,
            y_size: 2,
            mass,
        }
    }
}
