//! Monte Carlo estimates of the expected LCS ratio of two uniform random
//! words over `[k]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lcs::lcs_len;
use crate::words::{Symbol, Word};

/// Cap on `samples * n^2` DP cells.
pub const GAMMA_BUDGET: u128 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaEstimate {
    pub k: usize,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub mean_lcs: f64,
    /// `mean_lcs / n`.
    pub mean_ratio: f64,
    /// Sample standard deviation of the LCS length.
    pub std_dev: f64,
    /// Normal-approximation interval for `mean_ratio`.
    pub ci95: (f64, f64),
    pub gamma_sqrtk: f64,
    pub lengths: Vec<usize>,
}

/// Sample `i` draws both words from its own stream `i` of a ChaCha8
/// generator seeded with `seed`, so the result does not depend on
/// scheduling.
pub fn sample_pair(k: usize, n: usize, seed: u64, i: u64) -> (Word, Word) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let mut draw = || -> Word {
        let symbols: Vec<Symbol> = (0..n).map(|_| rng.gen_range(0..k as Symbol)).collect();
        Word::new(symbols, k).expect("symbols below k")
    };
    let a = draw();
    let b = draw();
    (a, b)
}

pub fn estimate_gamma(k: usize, n: usize, samples: usize, seed: u64) -> Result<GammaEstimate> {
    if k == 0 || n == 0 {
        return Err(Error::Domain("k and n must be positive".into()));
    }
    if samples < 2 {
        return Err(Error::Domain("need at least two samples".into()));
    }
    let cost = (samples as u128) * (n as u128) * (n as u128);
    if cost > GAMMA_BUDGET {
        return Err(Error::BudgetExceeded {
            cost,
            budget: GAMMA_BUDGET,
        });
    }
    let lengths: Vec<usize> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let (a, b) = sample_pair(k, n, seed, i);
            lcs_len(&a, &b)
        })
        .collect();

    let m = samples as f64;
    let mean_lcs = lengths.iter().sum::<usize>() as f64 / m;
    let var = lengths.iter().map(|&l| (l as f64 - mean_lcs).powi(2)).sum::<f64>() / (m - 1.0);
    let std_dev = var.sqrt();
    let mean_ratio = mean_lcs / n as f64;
    let half_width = 1.96 * std_dev / (n as f64 * m.sqrt());
    Ok(GammaEstimate {
        k,
        n,
        samples,
        seed,
        mean_lcs,
        mean_ratio,
        std_dev,
        ci95: (mean_ratio - half_width, mean_ratio + half_width),
        gamma_sqrtk: mean_ratio * (k as f64).sqrt(),
        lengths,
    })
}
