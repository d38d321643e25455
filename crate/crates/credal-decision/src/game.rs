//! Exact solution of finite zero-sum matrix games by linear programming.
//!
//! The row player picks a mixture `σ` minimising the worst column payoff
//! `max_c Σ_r σ_r A[r][c]`. After shifting the matrix positive, the standard
//! substitution `u = σ / v` turns the problem into
//!
//! ```text
//!   maximise Σ_r u_r   subject to   Aᵀ u <= 1,  u >= 0,
//! ```
//!
//! which a dense primal simplex solves from the slack basis. Bland's rule
//! (smallest-index entering column, smallest-index basic variable on ratio
//! ties) makes cycling impossible, so termination is guaranteed. Column
//! duals give the adversary's optimal mixture.

use crate::error::DecisionError;

const PIVOT_EPS: f64 = 1e-10;

/// A solved game: the minimising row mixture, the maximising column
/// mixture, and the value `min_σ max_c σᵀ A e_c`.
#[derive(Debug, Clone)]
pub struct GameSolution {
    pub value: f64,
    pub row_mixture: Vec<f64>,
    pub column_mixture: Vec<f64>,
}

/// Solves the game for the row player (the minimiser). All entries must be
/// finite; the matrix must be rectangular and non-empty.
pub fn solve_matrix_game(payoff: &[Vec<f64>]) -> Result<GameSolution, DecisionError> {
    let nrows = payoff.len();
    let ncols = payoff.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Err(DecisionError::Dimension("empty payoff matrix".into()));
    }
    let mut min_entry = f64::INFINITY;
    for (r, row) in payoff.iter().enumerate() {
        if row.len() != ncols {
            return Err(DecisionError::Dimension("ragged payoff matrix".into()));
        }
        for (c, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(DecisionError::NonFinitePayoff { row: r, col: c });
            }
            min_entry = min_entry.min(v);
        }
    }
    // Shift so every entry is at least 1; the game value shifts by the same
    // amount and the transformed value 1/Σu stays positive and bounded.
    let shift = 1.0 - min_entry;

    // Tableau: one constraint per column of the game. Layout per row:
    // [u_0 .. u_{nrows-1} | s_0 .. s_{ncols-1} | rhs]
    let width = nrows + ncols + 1;
    let rhs = width - 1;
    let mut tab: Vec<Vec<f64>> = (0..ncols)
        .map(|c| {
            let mut row = vec![0.0; width];
            for r in 0..nrows {
                row[r] = payoff[r][c] + shift;
            }
            row[nrows + c] = 1.0;
            row[rhs] = 1.0;
            row
        })
        .collect();
    // Reduced-cost row for maximising Σ u_r from the all-slack basis.
    let mut obj = vec![0.0; width];
    for entry in obj.iter_mut().take(nrows) {
        *entry = 1.0;
    }
    let mut basis: Vec<usize> = (nrows..nrows + ncols).collect();

    // Bland: entering variable is the smallest index with positive
    // reduced cost.
    while let Some(enter) = (0..width - 1).find(|&j| obj[j] > PIVOT_EPS) {
        // Ratio test; ties resolved toward the smallest basic variable index.
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in tab.iter().enumerate() {
            let a = row[enter];
            if a > PIVOT_EPS {
                let ratio = row[rhs] / a;
                let better = match leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < lr - PIVOT_EPS
                            || ((ratio - lr).abs() <= PIVOT_EPS && basis[i] < basis[li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = leave else {
            return Err(DecisionError::Infeasible(
                "objective unbounded; game matrix was not shifted positive".into(),
            ));
        };

        let pivot = tab[pivot_row][enter];
        for v in tab[pivot_row].iter_mut() {
            *v /= pivot;
        }
        for i in 0..ncols {
            if i != pivot_row {
                let factor = tab[i][enter];
                if factor != 0.0 {
                    for j in 0..width {
                        tab[i][j] -= factor * tab[pivot_row][j];
                    }
                }
            }
        }
        let factor = obj[enter];
        if factor != 0.0 {
            for j in 0..width {
                obj[j] -= factor * tab[pivot_row][j];
            }
        }
        basis[pivot_row] = enter;
    }

    // Primal solution: u_r from the basis; Σu = 1 / shifted value.
    let mut u = vec![0.0; nrows];
    for (i, &b) in basis.iter().enumerate() {
        if b < nrows {
            u[b] = tab[i][rhs].max(0.0);
        }
    }
    let total: f64 = u.iter().sum();
    if total <= 0.0 {
        return Err(DecisionError::Infeasible(
            "degenerate optimum with zero mixture mass".into(),
        ));
    }
    let row_mixture: Vec<f64> = u.iter().map(|&v| v / total).collect();
    let value = 1.0 / total - shift;

    // Dual solution: shadow prices of the column constraints.
    let mut duals: Vec<f64> = (0..ncols).map(|c| (-obj[nrows + c]).max(0.0)).collect();
    let dual_total: f64 = duals.iter().sum();
    if dual_total > 0.0 {
        duals.iter_mut().for_each(|v| *v /= dual_total);
    }

    Ok(GameSolution {
        value,
        row_mixture,
        column_mixture: duals,
    })
}
