use serde::Serialize;

use super::annotate::AnnotatedWord;
use super::blocks::BlockPartition;
use super::select::PairSelection;
use super::Thresholds;

/// A 0-rich interval: a subword starting and ending with good zeros that
/// holds exactly `good_zero_count` good zeros and at most a tenth as many ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RichInterval {
    /// Which side of the chosen pair (0 or 1).
    pub side: usize,
    pub block: usize,
    /// Rank of the first good zero among the word's good zeros.
    pub first_good: usize,
    /// Word index of the first symbol.
    pub start: usize,
    /// Word index of the last symbol (inclusive).
    pub end: usize,
    pub good_zero_count: u64,
    pub ones_count: u64,
    /// Position of the leftmost good zero.
    pub lp: u64,
    /// Position of the rightmost good zero.
    pub rp: u64,
}

impl RichInterval {
    pub fn overlaps(&self, other: &RichInterval) -> bool {
        self.start <= other.end && other.start <= self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCoverage {
    pub block: usize,
    /// Consistent ordinals whose intervals sit in this block.
    pub s_k: usize,
    pub selected: [usize; 2],
    /// Good zeros in the union of all candidate intervals of the block.
    pub candidate_good: [usize; 2],
    /// Good zeros covered by the selected (disjoint) intervals.
    pub selected_good: [usize; 2],
    /// Consistent zeros covered by the selected intervals.
    pub s_covered: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalStage {
    pub t: u32,
    pub rich_len: u64,
    /// For every ordinal of `T`, its interval in each word.
    pub chosen: Vec<(usize, RichInterval, RichInterval)>,
    /// Consistent ordinals (0-based).
    pub consistent: Vec<usize>,
    /// Selected disjoint intervals of the first word, in word order.
    pub left: Vec<RichInterval>,
    /// Selected disjoint intervals of the second word, in word order.
    pub right: Vec<RichInterval>,
    pub blocks: Vec<BlockCoverage>,
}

impl IntervalStage {
    pub fn s_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.s_k).collect()
    }
}

/// Leftmost window start covering every good rank, for windows of `len`
/// consecutive good zeros spanning at most `len / 10` ones.
fn window_starts(aw: &AnnotatedWord, len: usize) -> Vec<Option<usize>> {
    let g = aw.good.len();
    let limit = (len / 10) as u64;
    let mut next_valid = vec![None; g + 1];
    if len >= 1 && len <= g {
        for a in (0..=g - len).rev() {
            let span = aw.good_position(a + len - 1) - aw.good_position(a);
            next_valid[a] = if span <= limit { Some(a) } else { next_valid[a + 1] };
        }
    }
    (0..g)
        .map(|rank| {
            next_valid[(rank + 1).saturating_sub(len)].filter(|&a| a <= rank)
        })
        .collect()
}

fn interval_at(aw: &AnnotatedWord, side: usize, first_good: usize, len: usize, blocks: &BlockPartition) -> RichInterval {
    let last = first_good + len - 1;
    let start = aw.good_index(first_good);
    let end = aw.good_index(last);
    let (lp, rp) = (aw.good_position(first_good), aw.good_position(last));
    let block = blocks.block_of(start);
    RichInterval {
        side,
        block: if blocks.block_of(end) == block { block } else { usize::MAX },
        first_good,
        start,
        end,
        good_zero_count: len as u64,
        ones_count: rp - lp,
        lp,
        rp,
    }
}

/// Greedy left-to-right disjoint subfamily of equal-size windows.
fn greedy_disjoint(mut cands: Vec<RichInterval>) -> Vec<RichInterval> {
    cands.sort_by_key(|c| c.first_good);
    cands.dedup_by_key(|c| c.first_good);
    let mut picked: Vec<RichInterval> = Vec::new();
    for c in cands {
        if picked.last().is_none_or(|p| !p.overlaps(&c)) {
            picked.push(c);
        }
    }
    picked
}

/// Builds the intervals for the selected ordinals, keeps the consistent ones
/// (both intervals inside blocks of the same index), and picks disjoint
/// subfamilies per block.
pub fn choose_rich_intervals(
    words: [&AnnotatedWord; 2],
    selection: &PairSelection,
    blocks: [&BlockPartition; 2],
    thresholds: &Thresholds,
) -> IntervalStage {
    let t = selection.t;
    let len = thresholds.rich_len[t as usize] as usize;
    let starts = [window_starts(words[0], len), window_starts(words[1], len)];

    let mut chosen = Vec::new();
    for &j in &selection.ordinals {
        let mut pair = [None, None];
        for side in 0..2 {
            let aw = words[side];
            if let Some(rank) = aw.good_rank[j] {
                if let Some(a) = starts[side][rank] {
                    pair[side] = Some(interval_at(aw, side, a, len, blocks[side]));
                }
            }
        }
        if let [Some(a), Some(b)] = pair {
            chosen.push((j, a, b));
        }
    }

    let consistent: Vec<usize> = chosen
        .iter()
        .filter(|(_, a, b)| a.block != usize::MAX && a.block == b.block)
        .map(|&(j, _, _)| j)
        .collect();

    let nblocks = blocks[0].count().max(blocks[1].count());
    let mut per_block: Vec<[Vec<RichInterval>; 2]> = vec![[Vec::new(), Vec::new()]; nblocks];
    let mut s_zeros: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; nblocks];
    for (j, a, b) in &chosen {
        if a.block == usize::MAX || a.block != b.block {
            continue;
        }
        per_block[a.block][0].push(*a);
        per_block[a.block][1].push(*b);
        s_zeros[a.block][0].push(words[0].good_rank[*j].expect("typed zero is good"));
        s_zeros[a.block][1].push(words[1].good_rank[*j].expect("typed zero is good"));
    }

    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut coverage = Vec::new();
    for (block, cands) in per_block.into_iter().enumerate() {
        let s_k = cands[0].len();
        if s_k == 0 {
            continue;
        }
        let mut cov = BlockCoverage {
            block,
            s_k,
            selected: [0; 2],
            candidate_good: [0; 2],
            selected_good: [0; 2],
            s_covered: [0; 2],
        };
        for (side, side_cands) in cands.into_iter().enumerate() {
            let mut ranks: Vec<(usize, usize)> = side_cands
                .iter()
                .map(|c| (c.first_good, c.first_good + len - 1))
                .collect();
            ranks.sort_unstable();
            cov.candidate_good[side] = union_size(&ranks);
            let picked = greedy_disjoint(side_cands);
            cov.selected[side] = picked.len();
            cov.selected_good[side] = picked.len() * len;
            cov.s_covered[side] = s_zeros[block][side]
                .iter()
                .filter(|&&rank| {
                    picked
                        .iter()
                        .any(|p| p.first_good <= rank && rank < p.first_good + len)
                })
                .count();
            if side == 0 {
                left.extend(picked);
            } else {
                right.extend(picked);
            }
        }
        coverage.push(cov);
    }

    IntervalStage {
        t,
        rich_len: len as u64,
        chosen,
        consistent,
        left,
        right,
        blocks: coverage,
    }
}

fn union_size(sorted: &[(usize, usize)]) -> usize {
    let mut total = 0;
    let mut cur: Option<(usize, usize)> = None;
    for &(s, e) in sorted {
        cur = match cur {
            Some((cs, ce)) if s <= ce + 1 => Some((cs, ce.max(e))),
            Some((cs, ce)) => {
                total += ce - cs + 1;
                Some((s, e))
            }
            None => Some((s, e)),
        };
    }
    if let Some((cs, ce)) = cur {
        total += ce - cs + 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(first_good: usize, len: usize) -> RichInterval {
        RichInterval {
            side: 0,
            block: 0,
            first_good,
            start: first_good * 2,
            end: (first_good + len - 1) * 2,
            good_zero_count: len as u64,
            ones_count: 0,
            lp: 0,
            rp: 0,
        }
    }

    #[test]
    fn greedy_on_staggered_windows() {
        // windows [0,2], [1,3], [2,4], [5,7]: greedy keeps [0,2] and [5,7]
        let picked = greedy_disjoint(vec![iv(2, 3), iv(0, 3), iv(5, 3), iv(1, 3)]);
        let firsts: Vec<usize> = picked.iter().map(|p| p.first_good).collect();
        assert_eq!(firsts, vec![0, 5]);
        // union of candidates has 8 good zeros, selection covers 6 >= 8/3
        assert_eq!(union_size(&[(0, 2), (1, 3), (2, 4), (5, 7)]), 8);
    }

    #[test]
    fn single_zero_windows_are_disjoint() {
        let picked = greedy_disjoint(vec![iv(3, 1), iv(1, 1), iv(2, 1), iv(1, 1)]);
        assert_eq!(picked.len(), 3);
    }

    #[test]
    fn union_of_touching_ranges() {
        assert_eq!(union_size(&[(0, 1), (2, 3)]), 4);
        assert_eq!(union_size(&[]), 0);
    }
}
