use std::collections::HashSet;

use serde::Serialize;

use super::shift::ClosePairGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    /// `(left, right)` pairs, increasing in both coordinates.
    pub pairs: Vec<(usize, usize)>,
    pub max_degree: usize,
    /// Crossing pairs swapped while uncrossing.
    pub swaps: usize,
}

/// A greedy maximal matching of the close-pair graph, uncrossed so that both
/// sides appear in word order.
///
/// Closeness is a one-dimensional condition on shifted left positions, so
/// when `I_l < I_m` are matched to `J_l > J_m` the swapped edges
/// `(I_l, J_m)` and `(I_m, J_l)` are close as well. Each swap of an adjacent
/// inversion removes exactly one inversion, so uncrossing terminates.
pub fn noncrossing_matching(g: &ClosePairGraph) -> Matching {
    let mut edges = g.edges.clone();
    edges.sort_unstable();
    let mut used_left = vec![false; g.left.len()];
    let mut used_right = vec![false; g.right.len()];
    let mut pairs = Vec::new();
    for (l, r) in edges {
        if !used_left[l] && !used_right[r] {
            used_left[l] = true;
            used_right[r] = true;
            pairs.push((l, r));
        }
    }
    pairs.sort_unstable();

    let edge_set: HashSet<(usize, usize)> = g.edges.iter().copied().collect();
    let mut swaps = 0;
    let mut changed = true;
    while changed {
        changed = false;
        for i in 1..pairs.len() {
            let (l1, r1) = pairs[i - 1];
            let (l2, r2) = pairs[i];
            if r1 > r2 {
                debug_assert!(edge_set.contains(&(l1, r2)) && edge_set.contains(&(l2, r1)));
                pairs[i - 1] = (l1, r2);
                pairs[i] = (l2, r1);
                swaps += 1;
                changed = true;
            }
        }
    }
    Matching {
        pairs,
        max_degree: g.max_degree(),
        swaps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::intervals::RichInterval;

    fn iv(lp: u64) -> RichInterval {
        RichInterval {
            side: 0,
            block: 0,
            first_good: lp as usize,
            start: lp as usize,
            end: lp as usize,
            good_zero_count: 1,
            ones_count: 0,
            lp,
            rp: lp,
        }
    }

    fn graph(left: &[u64], right: &[u64], edges: Vec<(usize, usize)>) -> ClosePairGraph {
        ClosePairGraph {
            left: left.iter().map(|&p| iv(p)).collect(),
            right: right.iter().map(|&p| iv(p)).collect(),
            q: 0,
            t: 0,
            radius: 1,
            edges,
        }
    }

    #[test]
    fn complete_two_by_two() {
        let g = graph(&[0, 1], &[0, 1], vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let m = noncrossing_matching(&g);
        assert_eq!(m.pairs, vec![(0, 0), (1, 1)]);
        assert_eq!(m.max_degree, 2);
    }

    #[test]
    fn single_edge() {
        let g = graph(&[5], &[5, 9], vec![(0, 0)]);
        assert_eq!(noncrossing_matching(&g).pairs, vec![(0, 0)]);
    }

    #[test]
    fn geometric_graph_output_is_monotone() {
        let left = [0u64, 2, 2, 5, 9, 9, 12];
        let right = [1u64, 1, 3, 6, 8, 10, 13];
        let mut edges = Vec::new();
        for (l, &a) in left.iter().enumerate() {
            for (r, &b) in right.iter().enumerate() {
                if a.abs_diff(b) <= 1 {
                    edges.push((r, l));
                }
            }
        }
        // deliberately unsorted and transposed back
        let edges = edges.into_iter().rev().map(|(r, l)| (l, r)).collect();
        let m = noncrossing_matching(&graph(&left, &right, edges));
        assert!(m.pairs.windows(2).all(|p| p[0].0 < p[1].0 && p[0].1 < p[1].1));
        assert_eq!(m.pairs.len(), 7);
    }
}
