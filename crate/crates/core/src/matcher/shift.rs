use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::intervals::RichInterval;
use super::{ShiftStrategy, Thresholds};
use crate::error::{Error, Result};

/// Close pairs between the two interval families for one shift `Q`.
///
/// `(I1, I2)` is an edge iff `|LP(I2) - LP(I1) - Q| <= radius`, which is the
/// closeness of left positions after dropping the first `|Q|` ones from one
/// of the words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosePairGraph {
    pub left: Vec<RichInterval>,
    pub right: Vec<RichInterval>,
    pub q: i64,
    pub t: u32,
    pub radius: u64,
    /// Edges as `(left index, right index)`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl ClosePairGraph {
    pub fn is_close(&self, l: usize, r: usize) -> bool {
        let d = self.right[r].lp as i64 - self.left[l].lp as i64 - self.q;
        d.unsigned_abs() <= self.radius
    }

    /// Largest degree on either side.
    pub fn max_degree(&self) -> usize {
        let mut dl = vec![0usize; self.left.len()];
        let mut dr = vec![0usize; self.right.len()];
        for &(l, r) in &self.edges {
            dl[l] += 1;
            dr[r] += 1;
        }
        dl.into_iter().chain(dr).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftOutcome {
    pub graph: ClosePairGraph,
    /// Shifts range over `-q_max..=q_max`, `q_max = block_ones - 1`.
    pub q_max: i64,
    /// Number of shifts evaluated.
    pub evaluated: usize,
    /// Mean edge count over the evaluated shifts.
    pub average_edges: f64,
    /// Sum over blocks after the first of `|I_k^(1)| * |I_k^(2)|`.
    pub same_block_pairs: u64,
    /// Lower bound on the fraction of shifts making a same-block pair close.
    pub p_materialized: f64,
    /// `n^{1/r + t/r - 1} / (40 beta)` as a real.
    pub p_formula: f64,
}

/// Edge count for every shift `Q` in `-q_max..=q_max`.
fn edge_counts(left: &[RichInterval], right: &[RichInterval], q_max: i64, radius: i64) -> Vec<u64> {
    let reach = q_max + radius;
    let mut hist = vec![0u64; (2 * reach + 1) as usize];
    for l in left {
        let lo = l.lp as i64 - reach;
        let hi = l.lp as i64 + reach;
        let from = right.partition_point(|r| (r.lp as i64) < lo);
        let to = right.partition_point(|r| (r.lp as i64) <= hi);
        for r in &right[from..to] {
            hist[(r.lp as i64 - l.lp as i64 + reach) as usize] += 1;
        }
    }
    let mut prefix = vec![0u64; hist.len() + 1];
    for (i, h) in hist.iter().enumerate() {
        prefix[i + 1] = prefix[i] + h;
    }
    (-q_max..=q_max)
        .map(|q| {
            let lo = (q - radius + reach) as usize;
            let hi = (q + radius + reach) as usize;
            prefix[hi + 1] - prefix[lo]
        })
        .collect()
}

fn edges_at(left: &[RichInterval], right: &[RichInterval], q: i64, radius: i64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (li, l) in left.iter().enumerate() {
        let lo = l.lp as i64 + q - radius;
        let hi = l.lp as i64 + q + radius;
        let from = right.partition_point(|r| (r.lp as i64) < lo);
        let to = right.partition_point(|r| (r.lp as i64) <= hi);
        edges.extend((from..to).map(|ri| (li, ri)));
    }
    edges
}

/// Chooses the shift maximizing the number of close pairs (ties: smallest
/// `Q`). With the exhaustive strategy the result is at least the average
/// over all shifts, which is what a uniformly random shift achieves in
/// expectation.
pub fn best_shift(
    left: &[RichInterval],
    right: &[RichInterval],
    t: u32,
    thresholds: &Thresholds,
    beta_eff: f64,
    strategy: ShiftStrategy,
) -> Result<ShiftOutcome> {
    if left.is_empty() || right.is_empty() {
        return Err(Error::Domain("empty interval family".into()));
    }
    let q_max = thresholds.block_ones as i64 - 1;
    let radius = thresholds.close_radius[t as usize];
    let counts = edge_counts(left, right, q_max, radius as i64);

    let candidates: Vec<i64> = match strategy {
        ShiftStrategy::Exhaustive => (-q_max..=q_max).collect(),
        ShiftStrategy::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| rng.gen_range(-q_max..=q_max)).collect()
        }
    };
    let mut best_q = candidates[0];
    let mut total = 0u64;
    for &q in &candidates {
        let c = counts[(q + q_max) as usize];
        total += c;
        let b = counts[(best_q + q_max) as usize];
        if c > b || (c == b && q < best_q) {
            best_q = q;
        }
    }
    let average_edges = total as f64 / candidates.len() as f64;

    let nblocks = left.iter().chain(right).map(|i| i.block + 1).max().unwrap_or(0);
    let mut per_block = vec![[0u64; 2]; nblocks];
    for i in left {
        per_block[i.block][0] += 1;
    }
    for i in right {
        per_block[i.block][1] += 1;
    }
    let same_block_pairs = per_block.iter().skip(1).map(|c| c[0] * c[1]).sum();
    let shifts = (2 * q_max + 1) as f64;
    let p_materialized = ((radius + 1) as f64).min(shifts) / shifts;
    let (n, r) = (thresholds.n as f64, thresholds.r as f64);
    let p_formula = n.powf(1.0 / r + t as f64 / r - 1.0) / (40.0 * beta_eff);

    let edges = edges_at(left, right, best_q, radius as i64);
    debug_assert_eq!(edges.len() as u64, counts[(best_q + q_max) as usize]);
    Ok(ShiftOutcome {
        graph: ClosePairGraph {
            left: left.to_vec(),
            right: right.to_vec(),
            q: best_q,
            t,
            radius,
            edges,
        },
        q_max,
        evaluated: candidates.len(),
        average_edges,
        same_block_pairs,
        p_materialized,
        p_formula,
    })
}
