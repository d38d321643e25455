use crate::BayesError;

/// Sufficient statistics of a sample of `(x, y)` pairs with `x` in
/// `{0..M-1}` and `y` binary: the per-cell counts `n_{j,k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleCounts {
    /// `cells[j] = [n_{j,0}, n_{j,1}]`.
    cells: Vec<[u64; 2]>,
}

impl SampleCounts {
    pub fn empty(m: usize) -> Result<Self, BayesError> {
        if m == 0 {
            return Err(BayesError::Dimension("observation alphabet is empty".into()));
        }
        Ok(Self {
            cells: vec![[0, 0]; m],
        })
    }

    /// From an `M x 2` table `table[j] = [n_{j,0}, n_{j,1}]`.
    pub fn from_table(table: Vec<[u64; 2]>) -> Result<Self, BayesError> {
        if table.is_empty() {
            return Err(BayesError::Dimension("observation alphabet is empty".into()));
        }
        Ok(Self { cells: table })
    }

    pub fn m(&self) -> usize {
        self.cells.len()
    }

    /// `n_{j,k}`: observations with `X = j` and `Y = k`.
    pub fn count(&self, j: usize, k: usize) -> u64 {
        self.cells[j][k]
    }

    /// Per-outcome totals `(n_0, n_1)`.
    pub fn n_y(&self) -> [u64; 2] {
        let mut t = [0, 0];
        for c in &self.cells {
            t[0] += c[0];
            t[1] += c[1];
        }
        t
    }

    /// Per-observation totals.
    pub fn n_x(&self) -> Vec<u64> {
        self.cells.iter().map(|c| c[0] + c[1]).collect()
    }

    pub fn n(&self) -> u64 {
        let [n0, n1] = self.n_y();
        n0 + n1
    }

    pub fn add(&mut self, x: usize, y: usize) -> Result<(), BayesError> {
        if x >= self.cells.len() {
            return Err(BayesError::ObservationOutOfRange {
                x,
                m: self.cells.len(),
            });
        }
        if y > 1 {
            return Err(BayesError::OutcomeOutOfRange { y });
        }
        self.cells[x][y] += 1;
        Ok(())
    }

    /// A copy with one more `(x, y)` observation.
    pub fn with_observation(&self, x: usize, y: usize) -> Result<Self, BayesError> {
        let mut next = self.clone();
        next.add(x, y)?;
        Ok(next)
    }

    /// Column `k` as a count vector over observations.
    pub fn column(&self, k: usize) -> Vec<u64> {
        self.cells.iter().map(|c| c[k]).collect()
    }
}

/// Exact tallies of a sample.
pub fn counts_from_sample(sample: &[(usize, usize)], m: usize) -> Result<SampleCounts, BayesError> {
    let mut counts = SampleCounts::empty(m)?;
    for &(x, y) in sample {
        counts.add(x, y)?;
    }
    Ok(counts)
}
