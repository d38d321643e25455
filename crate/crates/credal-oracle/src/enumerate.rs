use credal_bayes::SampleCounts;

use crate::model::TrueModel;
use crate::{OracleError, TABLE_CAP};

/// One count table with its multinomial probability under the true model.
#[derive(Debug, Clone)]
pub struct CountTable {
    pub counts: SampleCounts,
    pub weight: f64,
}

/// `C(n + cells - 1, cells - 1)`, saturating once it exceeds the cap.
pub fn count_table_count(n: u64, cells: usize) -> u128 {
    let k = cells as u128 - 1;
    let n = n as u128;
    let mut r: u128 = 1;
    for i in 1..=k {
        r = r * (n + i) / i;
        if r > TABLE_CAP as u128 * 4 {
            return r;
        }
    }
    r
}

/// Iterates every composition of `n` over the `x_size * y_size` cells in a
/// fixed order, with multinomial weights computed in log space. Cells the
/// model assigns zero probability yield weight exactly 0 when occupied.
pub struct CountTableIter {
    n: u64,
    cells: Vec<u64>,
    log_probs: Vec<f64>,
    log_fact: Vec<f64>,
    done: bool,
}

impl CountTableIter {
    fn weight(&self) -> f64 {
        let mut log_w = self.log_fact[self.n as usize];
        for (&c, &lp) in self.cells.iter().zip(&self.log_probs) {
            if c > 0 {
                if lp == f64::NEG_INFINITY {
                    return 0.0;
                }
                log_w += c as f64 * lp - self.log_fact[c as usize];
            }
        }
        log_w.exp()
    }

    fn table(&self) -> SampleCounts {
        // cells are laid out x-major: cell 2j is (x=j, y=0), 2j+1 is (x=j, y=1)
        let table: Vec<[u64; 2]> = self
            .cells
            .chunks(2)
            .map(|pair| [pair[0], pair[1]])
            .collect();
        SampleCounts::from_table(table).expect("m >= 1")
    }
}

impl Iterator for CountTableIter {
    type Item = CountTable;

    fn next(&mut self) -> Option<CountTable> {
        if self.done {
            return None;
        }
        let item = CountTable {
            counts: self.table(),
            weight: self.weight(),
        };
        // advance to the next composition: move one unit from the first
        // non-empty cell to its right neighbour, dumping the rest back into
        // cell 0
        let cells = self.cells.len();
        match (0..cells - 1).find(|&i| self.cells[i] > 0) {
            Some(i) => {
                let v = self.cells[i];
                self.cells[i] = 0;
                self.cells[0] = v - 1;
                self.cells[i + 1] += 1;
            }
            None => self.done = true,
        }
        Some(item)
    }
}

/// Streams every count table of `model.n()` observations with its weight.
/// Errors when the table count exceeds [`TABLE_CAP`].
pub fn enumerate_count_tables(model: &TrueModel) -> Result<CountTableIter, OracleError> {
    let m = model.x_size();
    let cells = m * model.y_size();
    let tables = count_table_count(model.n(), cells);
    if tables > TABLE_CAP as u128 {
        return Err(OracleError::SizeCap {
            tables,
            cap: TABLE_CAP,
        });
    }
    let mut log_probs = Vec::with_capacity(cells);
    for x in 0..m {
        for y in 0..model.y_size() {
            let p = model.joint().prob(x, y);
            log_probs.push(if p > 0.0 { p.ln() } else { f64::NEG_INFINITY });
        }
    }
    let mut log_fact = vec![0.0; model.n() as usize + 1];
    for i in 1..log_fact.len() {
        log_fact[i] = log_fact[i - 1] + (i as f64).ln();
    }
    let mut cells_state = vec![0u64; cells];
    cells_state[0] = model.n();
    Ok(CountTableIter {
        n: model.n(),
        cells: cells_state,
        log_probs,
        log_fact,
        done: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::KahanSum;
    use credal_core::JointDistribution;

    fn uniform_model(n: u64) -> TrueModel {
        TrueModel::new(JointDistribution::new(2, 2, vec![0.25; 4]).unwrap(), n)
    }

    #[test]
    fn one_observation_four_tables() {
        let tables: Vec<CountTable> = enumerate_count_tables(&uniform_model(1)).unwrap().collect();
        assert_eq!(tables.len(), 4);
        for t in &tables {
            assert!((t.weight - 0.25).abs() < 1e-15);
            assert_eq!(t.counts.n(), 1);
        }
    }

    #[test]
    fn stars_and_bars_count_and_total_mass() {
        let tables: Vec<CountTable> = enumerate_count_tables(&uniform_model(4)).unwrap().collect();
        assert_eq!(tables.len(), 35);
        let mut total = KahanSum::default();
        for t in &tables {
            total.add(t.weight);
        }
        assert!((total.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_probability_cells_carry_zero_weight() {
        // perfectly correlated model: only diagonal cells are possible
        let joint = JointDistribution::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        let model = TrueModel::new(joint, 6);
        let mut total = KahanSum::default();
        let mut positive = 0;
        for t in enumerate_count_tables(&model).unwrap() {
            if t.weight > 0.0 {
                positive += 1;
                assert_eq!(t.counts.count(0, 1), 0);
                assert_eq!(t.counts.count(1, 0), 0);
            }
            total.add(t.weight);
        }
        assert_eq!(positive, 7);
        assert!((total.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn large_horizon_weights_still_sum_to_one() {
        let model = uniform_model(128);
        assert_eq!(count_table_count(128, 4), 366_145);
        let mut total = KahanSum::default();
        let mut seen = 0u64;
        for t in enumerate_count_tables(&model).unwrap() {
            total.add(t.weight);
            seen += 1;
        }
        assert_eq!(seen, 366_145);
        assert!((total.total() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cap_is_enforced() {
        let model = TrueModel::new(
            JointDistribution::new(8, 2, vec![1.0 / 16.0; 16]).unwrap(),
            1000,
        );
        assert!(matches!(
            enumerate_count_tables(&model),
            Err(OracleError::SizeCap { .. })
        ));
    }
}
