use credal_bayes::SampleCounts;
use credal_decision::LossSpec;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::model::TrueModel;
use crate::strategy::{ActionProbs, Engine, Strategy};
use crate::{KahanSum, OracleError};

/// Monte Carlo estimate of a strategy's risk.
#[derive(Debug, Clone, Copy)]
pub struct SimulationResult {
    pub mean: f64,
    /// Standard error of the mean (0 for a single run).
    pub std_error: f64,
    pub runs: u64,
}

/// Per-run substream key: SplitMix64 over the seed and run index, so runs
/// are independent and any run can be regenerated in isolation.
pub fn substream_seed(seed: u64, run: u64) -> u64 {
    let mut z = seed.wrapping_add(run.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sample_index(cdf: &[f64], u: f64) -> usize {
    match cdf.iter().position(|&c| u < c) {
        Some(i) => i,
        None => cdf.len() - 1,
    }
}

/// One simulated prediction round: draw the training sample, draw the next
/// pair, play the strategy, return the realized loss.
fn run_once(
    engine: &Engine,
    model: &TrueModel,
    loss: &LossSpec,
    cell_cdf: &[f64],
    rng: &mut ChaCha8Rng,
) -> Result<f64, OracleError> {
    let y_size = model.y_size();
    let mut counts = SampleCounts::empty(model.x_size())?;
    for _ in 0..model.n() {
        let cell = sample_index(cell_cdf, rng.random::<f64>());
        counts.add(cell / y_size, cell % y_size)?;
    }
    let cell = sample_index(cell_cdf, rng.random::<f64>());
    let (x, y) = (cell / y_size, cell % y_size);
    let action = match engine.action_probs(&counts, x, loss)? {
        ActionProbs::Point(a) => a,
        ActionProbs::Mixed(dist) => {
            let mut cdf = Vec::with_capacity(dist.support_size());
            let mut acc = 0.0;
            for a in 0..dist.support_size() {
                acc += dist.prob(a);
                cdf.push(acc);
            }
            sample_index(&cdf, rng.random::<f64>())
        }
    };
    Ok(loss.loss(y, action, x))
}

/// Seeded Monte Carlo estimate of [`crate::strategy_risk`]. Runs are
/// embarrassingly parallel over independent substreams; the reduction is
/// a fixed-order compensated sum, so identical seeds give bit-identical
/// results regardless of thread count.
pub fn simulate(
    model: &TrueModel,
    strategy: &Strategy,
    loss: &LossSpec,
    runs: u64,
    seed: u64,
) -> Result<SimulationResult, OracleError> {
    if runs == 0 {
        return Err(OracleError::NoRuns);
    }
    let engine = Engine::build(model, strategy, loss)?;
    let mut cell_cdf = Vec::with_capacity(model.x_size() * model.y_size());
    let mut acc = 0.0;
    for x in 0..model.x_size() {
        for y in 0..model.y_size() {
            acc += model.joint().prob(x, y);
            cell_cdf.push(acc);
        }
    }

    let losses: Vec<f64> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = ChaCha8Rng::seed_from_u64(substream_seed(seed, run));
            run_once(&engine, model, loss, &cell_cdf, &mut rng)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut sum = KahanSum::default();
    for &l in &losses {
        sum.add(l);
    }
    let mean = sum.total() / runs as f64;
    let std_error = if runs > 1 {
        let mut sq = KahanSum::default();
        for &l in &losses {
            sq.add((l - mean) * (l - mean));
        }
        (sq.total() / (runs as f64 - 1.0) / runs as f64).sqrt()
    } else {
        0.0
    };
    Ok(SimulationResult {
        mean,
        std_error,
        runs,
    })
}
