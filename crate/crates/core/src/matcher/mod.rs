//! Finds a long common subsequence among `r + 2` balanced binary words.
//!
//! The pipeline follows the balanced-word argument stage by stage:
//!
//! 1. [`annotate_zeros`] / [`compute_types`]: positions, good and bad zeros,
//!    and the alternation scale (type) of every good zero.
//! 2. [`bad_pair_shortcut`]: two words whose `j`'th zeros are bad on the same
//!    side already share a long subsequence.
//! 3. [`select_pair_and_type`]: the pair and type with the most common
//!    ordinals.
//! 4. [`partition_blocks`] and [`choose_rich_intervals`]: one 0-rich
//!    interval per ordinal and word, consistent ordinals, and disjoint
//!    subfamilies per block.
//! 5. [`best_shift`]: the shift `Q` maximizing the number of close pairs.
//! 6. [`noncrossing_matching`] and [`assemble_witness`]: an uncrossed
//!    matching and the common subsequence it induces.
//!
//! Every real threshold is materialized as an integer (see [`Thresholds`]).
//! At sizes a desk machine can handle the default constants make every zero
//! bad, so the effective constants can be overridden; the guarantee flag in
//! the report is only set when the defaults are used and `n` is large
//! enough for the asymptotic statement.

mod annotate;
mod assemble;
mod blocks;
mod intervals;
mod matching;
mod report;
mod select;
mod shift;
mod shortcut;

pub use annotate::{
    annotate_word, annotate_zeros, annotate_zeros_with_threshold, compute_types, AnnotatedWord,
    ZeroAnnotation, ZeroClass, ZeroType,
};
pub use assemble::{assemble_witness, baseline_witness, Assembly};
pub use blocks::{partition_blocks, BlockPartition};
pub use intervals::{choose_rich_intervals, IntervalStage, RichInterval};
pub use matching::{noncrossing_matching, Matching};
pub use report::{
    run_matcher, Guarantee, MatcherReport, MatcherTrace, Sizes, Stage, StageData,
};
pub use select::{select_pair_and_type, PairSelection};
pub use shift::{best_shift, ClosePairGraph, ShiftOutcome};
pub use shortcut::{bad_pair_shortcut, BadSide, Shortcut};

use serde::Serialize;

use crate::error::{Error, Result};

/// How the shift `Q` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftStrategy {
    /// Every integer shift in range; the best one is at least the average.
    Exhaustive,
    /// `count` shifts drawn uniformly with a seeded generator.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatcherParams {
    pub r: usize,
    pub alpha_eff: f64,
    pub beta_eff: f64,
    pub shift: ShiftStrategy,
}

impl MatcherParams {
    /// `alpha = 1e-6 r^-9`, `beta = r^-6 / 40000`.
    pub fn defaults(r: usize) -> Self {
        MatcherParams {
            r,
            alpha_eff: default_alpha(r),
            beta_eff: default_beta(r),
            shift: ShiftStrategy::Exhaustive,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha_eff = alpha;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta_eff = beta;
        self
    }

    pub fn with_shift(mut self, shift: ShiftStrategy) -> Self {
        self.shift = shift;
        self
    }

    pub fn uses_default_constants(&self) -> bool {
        self.alpha_eff == default_alpha(self.r) && self.beta_eff == default_beta(self.r)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha_eff), ("beta", self.beta_eff)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if let ShiftStrategy::Sampled { count: 0, .. } = self.shift {
            return Err(Error::Domain("sampled shift needs at least one sample".into()));
        }
        Ok(())
    }
}

pub fn default_alpha(r: usize) -> f64 {
    1e-6 * (r.max(1) as f64).powi(-9)
}

pub fn default_beta(r: usize) -> f64 {
    (r.max(1) as f64).powi(-6) / 40000.0
}

/// Integer forms of the thresholds for one word length `n` and `r >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    pub n: usize,
    pub r: usize,
    /// `ceil(alpha n^{1-1/r})`: largest allowed |P - j| for a good zero.
    pub deviation: u64,
    /// `ceil(beta n^{1-1/r})`: ones per block.
    pub block_ones: u64,
    /// `ceil(n^{t/r})` for `t = 0..r`: good zeros in a 0-rich interval of type `t`.
    pub rich_len: Vec<u64>,
    /// `ceil(n^{t/r} / 20)`: closeness radius on left positions.
    pub close_radius: Vec<u64>,
    /// `ceil(3 n^{t/r} / 20)`: implied bound on right positions of close pairs.
    pub rp_radius: Vec<u64>,
    /// `ceil(n^{1/r})`: bound on the degree in the close-pair graph.
    pub degree_bound: u64,
}

impl Thresholds {
    pub fn new(n: usize, params: &MatcherParams) -> Self {
        let r = params.r.max(1);
        let scale = (n as f64).powf(1.0 - 1.0 / r as f64);
        let t_range = 0..r as u32;
        Thresholds {
            n,
            r,
            deviation: ceil_real(params.alpha_eff * scale).max(1),
            block_ones: ceil_real(params.beta_eff * scale).max(1),
            rich_len: t_range.clone().map(|t| ceil_scaled_root(n, t, r as u32, 1, 1)).collect(),
            close_radius: t_range.clone().map(|t| ceil_scaled_root(n, t, r as u32, 1, 20)).collect(),
            rp_radius: t_range.map(|t| ceil_scaled_root(n, t, r as u32, 3, 20)).collect(),
            degree_bound: ceil_scaled_root(n, 1, r as u32, 1, 1),
        }
    }

    /// `n^{1-1/r}` as a real.
    pub fn scale(&self) -> f64 {
        (self.n as f64).powf(1.0 - 1.0 / self.r as f64)
    }
}

/// Ceiling of a real computed in floating point, tolerant of rounding noise
/// just above an integer.
pub(crate) fn ceil_real(x: f64) -> u64 {
    if x <= 0.0 {
        return 0;
    }
    let c = x.ceil();
    if c >= 2.0 && c - x > 1.0 - 1e-9 * x {
        (c - 1.0) as u64
    } else {
        c as u64
    }
}

/// `ceil(num / den * n^{t/r})`, exact whenever the powers fit in 128 bits:
/// the smallest `c` with `(den c)^r >= num^r n^t`.
pub(crate) fn ceil_scaled_root(n: usize, t: u32, r: u32, num: u64, den: u64) -> u64 {
    let approx = num as f64 / den as f64 * (n as f64).powf(t as f64 / r as f64);
    let mut c = approx.ceil().max(0.0) as u64;
    let rhs = (num as u128)
        .checked_pow(r)
        .and_then(|x| (n as u128).checked_pow(t).and_then(|y| x.checked_mul(y)));
    let Some(rhs) = rhs else {
        return ceil_real(approx);
    };
    let holds = |c: u64| -> Option<bool> {
        (den as u128 * c as u128).checked_pow(r).map(|lhs| lhs >= rhs)
    };
    while c > 0 && holds(c - 1) == Some(true) {
        c -= 1;
    }
    loop {
        match holds(c) {
            Some(true) => return c,
            Some(false) => c += 1,
            None => return ceil_real(approx),
        }
    }
}

/// `n >= (10 r)^{9 r}`, the size from which the asymptotic statement applies.
pub fn asymptotic_regime(n: usize, r: usize) -> bool {
    match (10u128 * r as u128).checked_pow(9 * r as u32) {
        Some(bound) => n as u128 >= bound,
        None => false,
    }
}
