use crate::dist::{event_mask, FiniteDistribution, JointDistribution};
use crate::error::CredalError;
use crate::SUPPORT_TOL;

/// A closed interval of probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityInterval {
    pub lower: f64,
    pub upper: f64,
}

impl ProbabilityInterval {
    pub fn new(lower: f64, upper: f64) -> Result<Self, CredalError> {
        if !(0.0..=1.0).contains(&lower) || !(0.0..=1.0).contains(&upper) || lower > upper {
            return Err(CredalError::InvalidDistribution(format!(
                "[{lower}, {upper}] is not a probability interval"
            )));
        }
        Ok(Self { lower, upper })
    }

    pub fn point(p: f64) -> Result<Self, CredalError> {
        Self::new(p, p)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// True when `other` strictly contains this interval on both sides.
    pub fn strictly_wider_than(&self, other: &Self) -> bool {
        self.lower < other.lower && self.upper > other.upper
    }
}

/// How a credal set was constructed. Some operations are specified only for
/// particular families.
#[derive(Debug, Clone, PartialEq)]
pub enum CredalFamily {
    /// All joints over `X × Y` whose `Y`-marginal equals the stored one.
    MarginalOnY(FiniteDistribution),
    /// Anything else given by an explicit vertex list.
    General,
}

/// A convex set of joint distributions over `X × Y`, stored by its extreme
/// points.
#[derive(Debug, Clone)]
pub struct CredalSet {
    x_size: usize,
    y_size: usize,
    vertices: Vec<JointDistribution>,
    label: String,
    family: CredalFamily,
}

/// Dilation status of one observation value.
#[derive(Debug, Clone)]
pub struct ObservationReport {
    pub x: usize,
    /// Conditional probability interval of the event given `X = x`, or
    /// `None` when no vertex gives the observation positive probability.
    pub interval: Option<ProbabilityInterval>,
    /// Whether the conditional interval strictly contains the prior interval.
    pub dilates: bool,
}

/// Result of checking an event for dilation under every observation.
#[derive(Debug, Clone)]
pub struct DilationReport {
    pub event: Vec<usize>,
    pub prior: ProbabilityInterval,
    pub per_observation: Vec<ObservationReport>,
    /// True iff every observation with positive upper probability strictly
    /// widens the event's interval.
    pub dilates: bool,
}

impl CredalSet {
    /// The set of all joints on `X × Y` with the given `Y`-marginal.
    ///
    /// Its extreme points are the joints concentrating each `Y`-column on a
    /// single observation, one per function `f: Y -> X`; duplicates arising
    /// from zero-mass columns are collapsed. For a full-support marginal the
    /// vertex count is `x_size^y_size`.
    pub fn marginal_family(p_y: &FiniteDistribution, x_size: usize) -> Result<Self, CredalError> {
        if x_size == 0 {
            return Err(CredalError::Dimension(
                "observation alphabet must be non-empty".into(),
            ));
        }
        let y_size = p_y.support_size();
        let count = x_size
            .checked_pow(y_size as u32)
            .ok_or_else(|| CredalError::Dimension("vertex count overflows".into()))?;
        let mut vertices: Vec<JointDistribution> = Vec::with_capacity(count);
        for code in 0..count {
            // digit y of `code` in base x_size is f(y)
            let mut mass = vec![0.0; x_size * y_size];
            let mut rest = code;
            for y in 0..y_size {
                let fx = rest % x_size;
                rest /= x_size;
                mass[fx * y_size + y] = p_y.prob(y);
            }
            let joint = JointDistribution::new(x_size, y_size, mass)?;
            if !vertices.iter().any(|v| v.mass() == joint.mass()) {
                vertices.push(joint);
            }
        }
        Ok(Self {
            x_size,
            y_size,
            vertices,
            label: "fixed Y-marginal".into(),
            family: CredalFamily::MarginalOnY(p_y.clone()),
        })
    }

    /// A credal set containing a single distribution.
    pub fn singleton(joint: JointDistribution) -> Self {
        Self {
            x_size: joint.x_size(),
            y_size: joint.y_size(),
            vertices: vec![joint],
            label: "singleton".into(),
            family: CredalFamily::General,
        }
    }

    /// A general credal set from an explicit vertex list.
    pub fn from_vertices(
        vertices: Vec<JointDistribution>,
        label: impl Into<String>,
    ) -> Result<Self, CredalError> {
        let first = vertices
            .first()
            .ok_or_else(|| CredalError::Dimension("empty vertex list".into()))?;
        let (x_size, y_size) = (first.x_size(), first.y_size());
        for v in &vertices {
            if v.x_size() != x_size || v.y_size() != y_size {
                return Err(CredalError::Dimension(
                    "vertices disagree on dimensions".into(),
                ));
            }
        }
        Ok(Self {
            x_size,
            y_size,
            vertices,
            label: label.into(),
            family: CredalFamily::General,
        })
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn vertices(&self) -> &[JointDistribution] {
        &self.vertices
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> &CredalFamily {
        &self.family
    }

    /// Unconditional lower/upper probability of an event in `Y`.
    pub fn event_bounds(&self, event: &[usize]) -> Result<ProbabilityInterval, CredalError> {
        let mask = event_mask(event, self.y_size)?;
        let mut lower = f64::INFINITY;
        let mut upper = f64::NEG_INFINITY;
        for v in &self.vertices {
            let p: f64 = (0..self.x_size)
                .flat_map(|x| (0..self.y_size).map(move |y| (x, y)))
                .filter(|&(_, y)| mask[y])
                .map(|(x, y)| v.prob(x, y))
                .sum();
            lower = lower.min(p);
            upper = upper.max(p);
        }
        ProbabilityInterval::new(lower.clamp(0.0, 1.0), upper.clamp(0.0, 1.0))
    }

    /// Lower/upper conditional probability of an event in `Y` given `X = x`,
    /// under regular extension: vertices with `Pr(X=x)` at most
    /// [`SUPPORT_TOL`] are excluded. The extrema of this ratio of linear
    /// functionals are attained at vertices, so the scan is exact.
    pub fn conditional_bounds(
        &self,
        event: &[usize],
        x: usize,
    ) -> Result<ProbabilityInterval, CredalError> {
        if x >= self.x_size {
            return Err(CredalError::IndexOutOfRange(format!(
                "observation {x} with alphabet size {}",
                self.x_size
            )));
        }
        let mask = event_mask(event, self.y_size)?;
        let mut lower = f64::INFINITY;
        let mut upper = f64::NEG_INFINITY;
        let mut admissible = false;
        for v in &self.vertices {
            let px: f64 = (0..self.y_size).map(|y| v.prob(x, y)).sum();
            if px <= SUPPORT_TOL {
                continue;
            }
            admissible = true;
            let pe: f64 = (0..self.y_size)
                .filter(|&y| mask[y])
                .map(|y| v.prob(x, y))
                .sum();
            let q = pe / px;
            lower = lower.min(q);
            upper = upper.max(q);
        }
        if !admissible {
            return Err(CredalError::ConditioningUndefined { x });
        }
        ProbabilityInterval::new(lower.clamp(0.0, 1.0), upper.clamp(0.0, 1.0))
    }

    /// Checks whether conditioning on `X` dilates the event: for each
    /// observation with positive probability somewhere in the set, the
    /// conditional interval must strictly contain the prior interval.
    /// Degenerate prior intervals at 0 or 1 cannot strictly widen, so they
    /// never dilate.
    pub fn dilation_report(&self, event: &[usize]) -> Result<DilationReport, CredalError> {
        let prior = self.event_bounds(event)?;
        let mut per_observation = Vec::with_capacity(self.x_size);
        let mut all_dilate = true;
        let mut any_admissible = false;
        for x in 0..self.x_size {
            match self.conditional_bounds(event, x) {
                Ok(interval) => {
                    let dilates = interval.strictly_wider_than(&prior);
                    any_admissible = true;
                    all_dilate &= dilates;
                    per_observation.push(ObservationReport {
                        x,
                        interval: Some(interval),
                        dilates,
                    });
                }
                Err(CredalError::ConditioningUndefined { .. }) => {
                    per_observation.push(ObservationReport {
                        x,
                        interval: None,
                        dilates: false,
                    });
                }
                Err(e) => return Err(e),
            }
        }
        Ok(DilationReport {
            event: event.to_vec(),
            prior,
            per_observation,
            dilates: any_admissible && all_dilate,
        })
    }

    /// The entropy-maximising element of a marginal family: observations
    /// uniform and independent of `Y`, i.e. `Pr(x, y) = p_y(y) / x_size`.
    /// Conditioning it on any observation returns the fixed `Y`-marginal.
    ///
    /// Only specified for sets built by [`CredalSet::marginal_family`];
    /// general maximum entropy over an arbitrary vertex list is out of scope.
    pub fn max_entropy_joint(&self) -> Result<JointDistribution, CredalError> {
        let p_y = match &self.family {
            CredalFamily::MarginalOnY(p_y) => p_y,
            CredalFamily::General => {
                return Err(CredalError::UnsupportedFamily(format!(
                    "max_entropy_joint requires a marginal family, got \"{}\"",
                    self.label
                )))
            }
        };
        let m = self.x_size as f64;
        let mut mass = vec![0.0; self.x_size * self.y_size];
        for x in 0..self.x_size {
            for y in 0..self.y_size {
                mass[x * self.y_size + y] = p_y.prob(y) / m;
            }
        }
        JointDistribution::new(self.x_size, self.y_size, mass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_y(p1: f64) -> FiniteDistribution {
        FiniteDistribution::bernoulli(p1).unwrap()
    }

    #[test]
    fn marginal_family_vertex_counts() {
        let c = CredalSet::marginal_family(&FiniteDistribution::new(vec![2.0 / 3.0, 1.0 / 3.0]).unwrap(), 2).unwrap();
        assert_eq!(c.vertices().len(), 4);
        for v in c.vertices() {
            assert!(v.y_marginal().approx_eq(&p_y(1.0 / 3.0), 1e-12));
        }

        let c3 = CredalSet::marginal_family(&p_y(0.5), 3).unwrap();
        assert_eq!(c3.vertices().len(), 9);
    }

    #[test]
    fn degenerate_marginal_collapses_vertices() {
        // All mass on Y=0: only the choice of f(0) matters.
        let c = CredalSet::marginal_family(&FiniteDistribution::new(vec![1.0, 0.0]).unwrap(), 2).unwrap();
        assert_eq!(c.vertices().len(), 2);
        for v in c.vertices() {
            assert!((v.y_marginal().prob(0) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn conditional_bounds_dilate_to_unit_interval() {
        let c = CredalSet::marginal_family(&p_y(0.3), 2).unwrap();
        for x in 0..2 {
            let iv = c.conditional_bounds(&[1], x).unwrap();
            assert_eq!(iv.lower, 0.0);
            assert_eq!(iv.upper, 1.0);
        }
        // Unconditionally the marginal is pinned.
        let prior = c.event_bounds(&[1]).unwrap();
        assert!((prior.lower - 0.3).abs() < 1e-15);
        assert!((prior.upper - 0.3).abs() < 1e-15);
    }

    #[test]
    fn singleton_bounds_are_points() {
        let j = JointDistribution::new(2, 2, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let c = CredalSet::singleton(j.clone());
        let iv = c.conditional_bounds(&[1], 0).unwrap();
        let q = j.condition_on_x(0).unwrap().prob(1);
        assert!((iv.lower - q).abs() < 1e-15);
        assert!((iv.upper - q).abs() < 1e-15);
        assert!(!c.dilation_report(&[1]).unwrap().dilates);
    }

    #[test]
    fn dilation_holds_for_interior_marginal() {
        let c = CredalSet::marginal_family(&p_y(0.3), 2).unwrap();
        let report = c.dilation_report(&[1]).unwrap();
        assert!(report.dilates);
        for obs in &report.per_observation {
            let iv = obs.interval.unwrap();
            assert_eq!((iv.lower, iv.upper), (0.0, 1.0));
            assert!(obs.dilates);
        }
    }

    #[test]
    fn degenerate_prior_never_dilates() {
        // Pr(Y=1) = 1: prior interval [1,1], conditional upper cannot exceed 1.
        let c = CredalSet::marginal_family(&FiniteDistribution::new(vec![0.0, 1.0]).unwrap(), 2).unwrap();
        let report = c.dilation_report(&[1]).unwrap();
        assert_eq!((report.prior.lower, report.prior.upper), (1.0, 1.0));
        assert!(!report.dilates);
    }

    #[test]
    fn conditioning_undefined_when_all_vertices_null_x() {
        // A singleton with no mass on X=1.
        let j = JointDistribution::new(2, 2, vec![0.4, 0.6, 0.0, 0.0]).unwrap();
        let c = CredalSet::singleton(j);
        assert_eq!(
            c.conditional_bounds(&[1], 1),
            Err(CredalError::ConditioningUndefined { x: 1 })
        );
    }

    #[test]
    fn maxent_of_marginal_family() {
        let c = CredalSet::marginal_family(&p_y(1.0 / 3.0), 2).unwrap();
        let m = c.max_entropy_joint().unwrap();
        assert!((m.prob(0, 0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((m.prob(0, 1) - 1.0 / 6.0).abs() < 1e-15);
        assert!((m.prob(1, 0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((m.prob(1, 1) - 1.0 / 6.0).abs() < 1e-15);
        // Conditioning the maxent joint ignores the observation.
        for x in 0..2 {
            assert!(m.condition_on_x(x).unwrap().approx_eq(&p_y(1.0 / 3.0), 1e-15));
        }

        let c4 = CredalSet::marginal_family(&p_y(1.0 / 3.0), 4).unwrap();
        let m4 = c4.max_entropy_joint().unwrap();
        for x in 0..4 {
            assert!((m4.prob(x, 0) - (2.0 / 3.0) / 4.0).abs() < 1e-15);
            assert!((m4.prob(x, 1) - (1.0 / 3.0) / 4.0).abs() < 1e-15);
        }
    }

    #[test]
    fn maxent_uniform_case() {
        let c = CredalSet::marginal_family(&p_y(0.5), 2).unwrap();
        let m = c.max_entropy_joint().unwrap();
        assert!((m.entropy_bits() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn maxent_rejected_on_general_sets() {
        let j = JointDistribution::new(2, 2, vec![0.25; 4]).unwrap();
        let c = CredalSet::singleton(j);
        assert!(matches!(
            c.max_entropy_joint(),
            Err(CredalError::UnsupportedFamily(_))
        ));
    }
}
