use serde::Serialize;

use super::annotate::AnnotatedWord;
use super::matching::Matching;
use super::shift::ClosePairGraph;
use crate::words::SubsequenceWitness;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assembly {
    pub witness: SubsequenceWitness,
    /// Ones dropped from the front of each word by the shift.
    pub removed_ones: [u64; 2],
    /// `lambda L + n/2 - |Q| - floor(lambda L / 2)`.
    pub bound: u64,
    /// Largest excess of ones in a gap of the shifted-down word over the
    /// matching gap of the other word.
    pub max_gap_excess: u64,
    /// Every gap excess is at most `L / 5`; with at least one matched pair
    /// this implies the witness reaches `bound`.
    pub gaps_within_fifth: bool,
    /// The assembled subsequence was shorter than `n/2` (or the matching
    /// was empty) and the all-zeros baseline was returned instead.
    pub used_baseline: bool,
}

/// All `n/2` zeros of both words, matched in order.
pub fn baseline_witness(a: &AnnotatedWord, b: &AnnotatedWord) -> SubsequenceWitness {
    let pairs: Vec<(usize, usize)> = a
        .zeros
        .iter()
        .zip(&b.zeros)
        .map(|(x, y)| (x.index, y.index))
        .collect();
    SubsequenceWitness::from_pairs(&a.word, &pairs)
}

/// Turns an uncrossed matching into a common subsequence of the two
/// original words.
///
/// The word on the positive side of `Q` loses its first `|Q|` ones. Between
/// consecutive matched intervals (and before the first, after the last) the
/// witness takes as many ones as both gaps have; inside a matched pair it
/// takes as many zeros as both intervals have. When the matching is empty
/// or the result is shorter than `n/2`, the all-zeros baseline is returned.
pub fn assemble_witness(
    matching: &Matching,
    graph: &ClosePairGraph,
    words: [&AnnotatedWord; 2],
) -> Assembly {
    let q = graph.q;
    let removed = [if q < 0 { q.unsigned_abs() } else { 0 }, if q > 0 { q as u64 } else { 0 }];
    let n = words[0].n();
    let len = graph.left.first().map_or(1, |i| i.good_zero_count);
    let lambda = matching.pairs.len() as u64;
    let bound = lambda * len + (n as u64 / 2).saturating_sub(q.unsigned_abs()) - lambda * len / 2;

    if matching.pairs.is_empty() {
        return Assembly {
            witness: baseline_witness(words[0], words[1]),
            removed_ones: removed,
            bound,
            max_gap_excess: 0,
            gaps_within_fifth: false,
            used_baseline: true,
        };
    }

    let spans: Vec<[(usize, usize); 2]> = matching
        .pairs
        .iter()
        .map(|&(l, r)| {
            [
                (graph.left[l].start, graph.left[l].end),
                (graph.right[r].start, graph.right[r].end),
            ]
        })
        .collect();

    let usable_ones = |side: usize, start: usize, end: usize| -> &[usize] {
        let ones = &words[side].ones;
        let from = ones.partition_point(|&i| i < start).max(removed[side] as usize);
        let to = ones.partition_point(|&i| i < end).max(from);
        &ones[from..to]
    };
    let short_side = if q >= 0 { 1 } else { 0 };

    let mut pairs = Vec::new();
    let mut max_gap_excess = 0u64;
    for i in 0..=spans.len() {
        let gap = |side: usize| {
            let start = if i == 0 { 0 } else { spans[i - 1][side].1 + 1 };
            let end = if i == spans.len() { n } else { spans[i][side].0 };
            usable_ones(side, start, end)
        };
        let (ga, gb) = (gap(0), gap(1));
        let excess = if short_side == 1 {
            gb.len().saturating_sub(ga.len())
        } else {
            ga.len().saturating_sub(gb.len())
        };
        max_gap_excess = max_gap_excess.max(excess as u64);
        pairs.extend(ga.iter().copied().zip(gb.iter().copied()));

        if i < spans.len() {
            let za = words[0].zero_range(spans[i][0].0, spans[i][0].1 + 1);
            let zb = words[1].zero_range(spans[i][1].0, spans[i][1].1 + 1);
            pairs.extend(
                za.map(|j| words[0].zeros[j].index)
                    .zip(zb.map(|j| words[1].zeros[j].index)),
            );
        }
    }

    let used_baseline = pairs.len() < n / 2;
    Assembly {
        witness: if used_baseline {
            baseline_witness(words[0], words[1])
        } else {
            SubsequenceWitness::from_pairs(&words[0].word, &pairs)
        },
        used_baseline,
        removed_ones: removed,
        bound,
        max_gap_excess,
        gaps_within_fifth: 5 * max_gap_excess <= len,
    }
}
