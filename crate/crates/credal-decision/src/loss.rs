use crate::error::DecisionError;

/// A loss table `L(y, a)` or, when observation-dependent, `L(y, a, x)`.
///
/// Entries live in `R ∪ {+∞}`; `NaN` and `-∞` are rejected. Infinite
/// entries are legal for expected-loss evaluation but rejected by the game
/// solver.
#[derive(Debug, Clone, PartialEq)]
pub struct LossSpec {
    y_size: usize,
    action_count: usize,
    /// `Some(x_size)` when the loss depends on the observation.
    x_size: Option<usize>,
    /// Indexed `[y][a]` or `[y][a][x]`, flattened.
    table: Vec<f64>,
}

fn validate_entry(v: f64) -> Result<(), DecisionError> {
    if v.is_nan() || v == f64::NEG_INFINITY {
        return Err(DecisionError::Dimension(format!(
            "loss entry {v} outside R ∪ {{+inf}}"
        )));
    }
    Ok(())
}

impl LossSpec {
    /// Observation-independent loss from a `[y][a]` table.
    pub fn from_table(rows: Vec<Vec<f64>>) -> Result<Self, DecisionError> {
        let y_size = rows.len();
        let action_count = rows.first().map_or(0, Vec::len);
        if y_size == 0 || action_count == 0 {
            return Err(DecisionError::Dimension("empty loss table".into()));
        }
        let mut table = Vec::with_capacity(y_size * action_count);
        for row in &rows {
            if row.len() != action_count {
                return Err(DecisionError::Dimension("ragged loss table".into()));
            }
            for &v in row {
                validate_entry(v)?;
                table.push(v);
            }
        }
        Ok(Self {
            y_size,
            action_count,
            x_size: None,
            table,
        })
    }

    /// Observation-dependent loss from a `[y][a][x]` table.
    pub fn from_observation_table(rows: Vec<Vec<Vec<f64>>>) -> Result<Self, DecisionError> {
        let y_size = rows.len();
        let action_count = rows.first().map_or(0, Vec::len);
        let x_size = rows
            .first()
            .and_then(|r| r.first())
            .map_or(0, Vec::len);
        if y_size == 0 || action_count == 0 || x_size == 0 {
            return Err(DecisionError::Dimension("empty loss table".into()));
        }
        let mut table = Vec::with_capacity(y_size * action_count * x_size);
        for row in &rows {
            if row.len() != action_count {
                return Err(DecisionError::Dimension("ragged loss table".into()));
            }
            for cell in row {
                if cell.len() != x_size {
                    return Err(DecisionError::Dimension("ragged loss table".into()));
                }
                for &v in cell {
                    validate_entry(v)?;
                    table.push(v);
                }
            }
        }
        Ok(Self {
            y_size,
            action_count,
            x_size: Some(x_size),
            table,
        })
    }

    /// Classification loss on `n` outcomes: 0 for a correct prediction,
    /// 1 otherwise.
    pub fn zero_one(n: usize) -> Self {
        let mut rows = vec![vec![1.0; n]; n];
        for (y, row) in rows.iter_mut().enumerate() {
            row[y] = 0.0;
        }
        Self::from_table(rows).expect("square table is valid")
    }

    /// Binary loss with asymmetric misclassification costs: predicting 0
    /// against truth 1 costs 1, predicting 1 against truth 0 costs `alpha`.
    pub fn asymmetric(alpha: f64) -> Result<Self, DecisionError> {
        if !alpha.is_finite() {
            return Err(DecisionError::Dimension(format!(
                "asymmetric cost {alpha} must be finite"
            )));
        }
        Self::from_table(vec![vec![0.0, alpha], vec![1.0, 0.0]])
    }

    /// Binary observation-dependent loss `(x + 1) * |a - y|`: mistakes are
    /// twice as expensive when 1 is observed.
    pub fn scaled_by_observation() -> Self {
        Self::binary_observation_loss(|a, y, x| (x as f64 + 1.0) * (a as f64 - y as f64).abs())
    }

    /// Binary observation-dependent loss `(|x - y| + 1) * |a - y|`: mistakes
    /// are twice as expensive when the observation disagrees with the truth.
    pub fn scaled_by_mismatch() -> Self {
        Self::binary_observation_loss(|a, y, x| {
            ((x as f64 - y as f64).abs() + 1.0) * (a as f64 - y as f64).abs()
        })
    }

    fn binary_observation_loss(f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut rows = vec![vec![vec![0.0; 2]; 2]; 2];
        for (y, by_action) in rows.iter_mut().enumerate() {
            for (a, by_obs) in by_action.iter_mut().enumerate() {
                for (x, cell) in by_obs.iter_mut().enumerate() {
                    *cell = f(a, y, x);
                }
            }
        }
        Self::from_observation_table(rows).expect("fixed-size table is valid")
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn action_count(&self) -> usize {
        self.action_count
    }

    pub fn x_dependent(&self) -> bool {
        self.x_size.is_some()
    }

    pub fn x_size(&self) -> Option<usize> {
        self.x_size
    }

    /// Loss of action `a` against outcome `y` under observation `x`.
    /// The observation is ignored when the loss is observation-independent.
    pub fn loss(&self, y: usize, a: usize, x: usize) -> f64 {
        match self.x_size {
            None => self.table[y * self.action_count + a],
            Some(xs) => self.table[(y * self.action_count + a) * xs + x],
        }
    }

    /// The observation-independent slice at `x`. Identity for
    /// observation-independent losses.
    pub fn slice_at(&self, x: usize) -> Result<LossSpec, DecisionError> {
        match self.x_size {
            None => Ok(self.clone()),
            Some(xs) if x < xs => {
                let mut table = Vec::with_capacity(self.y_size * self.action_count);
                for y in 0..self.y_size {
                    for a in 0..self.action_count {
                        table.push(self.loss(y, a, x));
                    }
                }
                Ok(LossSpec {
                    y_size: self.y_size,
                    action_count: self.action_count,
                    x_size: None,
                    table,
                })
            }
            Some(xs) => Err(DecisionError::Dimension(format!(
                "observation {x} with alphabet size {xs}"
            ))),
        }
    }

    pub fn has_infinite(&self) -> bool {
        self.table.iter().any(|v| v.is_infinite())
    }
}
