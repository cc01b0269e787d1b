use serde::Serialize;

use super::{MatcherParams, Thresholds};
use crate::error::{Error, Result};
use crate::words::{is_balanced, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroClass {
    Good,
    LeftBad,
    RightBad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroType {
    /// Largest `t` with a containing 0-rich interval of `ceil(n^{t/r})` good zeros.
    Rich(u32),
    LeftBad,
    RightBad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroAnnotation {
    /// 1-based rank of this zero among the zeros of the word.
    pub ordinal: usize,
    /// Index of the zero in the word.
    pub index: usize,
    /// Number of ones to its left.
    pub position: u64,
    pub expected: u64,
    pub deviation: i64,
    pub class: ZeroClass,
    pub zero_type: ZeroType,
}

impl ZeroAnnotation {
    pub fn is_good(&self) -> bool {
        self.class == ZeroClass::Good
    }

    pub fn rich_type(&self) -> Option<u32> {
        match self.zero_type {
            ZeroType::Rich(t) => Some(t),
            _ => None,
        }
    }
}

/// A balanced binary word with its zero annotations and lookup tables.
#[derive(Debug, Clone)]
pub struct AnnotatedWord {
    pub word: Word,
    pub threshold: u64,
    pub zeros: Vec<ZeroAnnotation>,
    /// Word indices of the ones, in order.
    pub ones: Vec<usize>,
    /// Ordinals (0-based) of the good zeros, in order.
    pub good: Vec<usize>,
    /// For every zero ordinal (0-based), its rank among the good zeros.
    pub good_rank: Vec<Option<usize>>,
}

impl AnnotatedWord {
    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// Position (ones to the left) of the `g`'th good zero.
    pub fn good_position(&self, g: usize) -> u64 {
        self.zeros[self.good[g]].position
    }

    /// Word index of the `g`'th good zero.
    pub fn good_index(&self, g: usize) -> usize {
        self.zeros[self.good[g]].index
    }

    /// Number of ones in `word[start..end]`.
    pub fn ones_in(&self, start: usize, end: usize) -> usize {
        self.ones.partition_point(|&i| i < end) - self.ones.partition_point(|&i| i < start)
    }

    /// Number of zeros in `word[start..end]`.
    pub fn zeros_in(&self, start: usize, end: usize) -> usize {
        self.zero_range(start, end).len()
    }

    /// Ordinals (0-based) of the zeros in `word[start..end]`.
    pub fn zero_range(&self, start: usize, end: usize) -> std::ops::Range<usize> {
        self.zeros.partition_point(|z| z.index < start)..self.zeros.partition_point(|z| z.index < end)
    }

    pub fn good_in(&self, start: usize, end: usize) -> usize {
        self.zero_range(start, end)
            .filter(|&j| self.zeros[j].is_good())
            .count()
    }
}

fn check_balanced_binary(w: &Word) -> Result<()> {
    let binary = w.alphabet_size() == 2 || (w.alphabet_size() == 1 && w.is_empty());
    if !binary || !is_balanced(w) {
        return Err(Error::NotBalancedBinary { index: 0 });
    }
    Ok(())
}

/// Annotates every zero with deviation threshold `threshold`: a zero is good
/// iff `|P - j| <= threshold`. Types start out as `Rich(0)` for good zeros.
pub fn annotate_zeros_with_threshold(w: &Word, threshold: u64) -> Result<Vec<ZeroAnnotation>> {
    check_balanced_binary(w)?;
    let mut out = Vec::with_capacity(w.len() / 2);
    let mut ones = 0u64;
    for (index, &s) in w.symbols().iter().enumerate() {
        if s == 1 {
            ones += 1;
            continue;
        }
        let ordinal = out.len() + 1;
        let expected = ordinal as u64;
        let deviation = ones as i64 - expected as i64;
        let (class, zero_type) = if deviation.unsigned_abs() <= threshold {
            (ZeroClass::Good, ZeroType::Rich(0))
        } else if deviation < 0 {
            (ZeroClass::LeftBad, ZeroType::LeftBad)
        } else {
            (ZeroClass::RightBad, ZeroType::RightBad)
        };
        out.push(ZeroAnnotation {
            ordinal,
            index,
            position: ones,
            expected,
            deviation,
            class,
            zero_type,
        });
    }
    Ok(out)
}

/// Annotates with the materialized threshold `ceil(alpha n^{1-1/r})`.
pub fn annotate_zeros(w: &Word, params: &MatcherParams) -> Result<Vec<ZeroAnnotation>> {
    let th = Thresholds::new(w.len(), params);
    annotate_zeros_with_threshold(w, th.deviation)
}

/// Assigns types to the good zeros: the largest `t < r` such that some window
/// of `ceil(n^{t/r})` consecutive good zeros containing the zero spans at
/// most `floor(ceil(n^{t/r}) / 10)` ones.
pub fn compute_types(annotations: &mut [ZeroAnnotation], rich_len: &[u64]) {
    let good: Vec<usize> = (0..annotations.len())
        .filter(|&j| annotations[j].is_good())
        .collect();
    let g = good.len();
    let mut best = vec![0u32; g];
    for (t, &len) in rich_len.iter().enumerate().skip(1) {
        let len = len as usize;
        if len == 0 || len > g {
            continue;
        }
        let limit = (len / 10) as u64;
        // difference array over good-zero ranks
        let mut cover = vec![0i32; g + 1];
        for a in 0..=g - len {
            let span = annotations[good[a + len - 1]].position - annotations[good[a]].position;
            if span <= limit {
                cover[a] += 1;
                cover[a + len] -= 1;
            }
        }
        let mut running = 0;
        for (rank, b) in best.iter_mut().enumerate() {
            running += cover[rank];
            if running > 0 {
                *b = t as u32;
            }
        }
    }
    for (rank, &j) in good.iter().enumerate() {
        annotations[j].zero_type = ZeroType::Rich(best[rank]);
    }
}

/// Annotation plus types plus lookup tables, as used by the pipeline.
pub fn annotate_word(w: &Word, thresholds: &Thresholds) -> Result<AnnotatedWord> {
    let mut zeros = annotate_zeros_with_threshold(w, thresholds.deviation)?;
    compute_types(&mut zeros, &thresholds.rich_len);
    let ones = w
        .symbols()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == 1)
        .map(|(i, _)| i)
        .collect();
    let mut good = Vec::new();
    let mut good_rank = vec![None; zeros.len()];
    for (j, z) in zeros.iter().enumerate() {
        if z.is_good() {
            good_rank[j] = Some(good.len());
            good.push(j);
        }
    }
    Ok(AnnotatedWord {
        word: w.clone(),
        threshold: thresholds.deviation,
        zeros,
        ones,
        good,
        good_rank,
    })
}
