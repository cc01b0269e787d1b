use serde::Serialize;

use super::annotate::AnnotatedWord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSelection {
    pub pair: (usize, usize),
    pub t: u32,
    /// 0-based ordinals whose zeros have type `t` in both words.
    pub ordinals: Vec<usize>,
}

/// Picks the pair of words and the type `t in 0..=r-2` with the most
/// ordinals where both words' zeros have type `t`. Ties go to the smallest
/// `(i1, i2, t)`. `None` when every such set is empty.
pub fn select_pair_and_type(family: &[AnnotatedWord], r: usize) -> Option<PairSelection> {
    if r < 2 || family.len() < 2 {
        return None;
    }
    let types = r - 1;
    let zeros = family[0].zeros.len();
    let mut best: Option<(usize, (usize, usize), u32)> = None;
    for i1 in 0..family.len() {
        for i2 in i1 + 1..family.len() {
            let mut counts = vec![0usize; types];
            for j in 0..zeros {
                if let (Some(a), Some(b)) = (
                    family[i1].zeros[j].rich_type(),
                    family[i2].zeros[j].rich_type(),
                ) {
                    if a == b && (a as usize) < types {
                        counts[a as usize] += 1;
                    }
                }
            }
            for (t, &c) in counts.iter().enumerate() {
                if c > 0 && best.is_none_or(|b| c > b.0) {
                    best = Some((c, (i1, i2), t as u32));
                }
            }
        }
    }
    let (_, pair, t) = best?;
    let ordinals = (0..zeros)
        .filter(|&j| {
            family[pair.0].zeros[j].rich_type() == Some(t)
                && family[pair.1].zeros[j].rich_type() == Some(t)
        })
        .collect();
    Some(PairSelection { pair, t, ordinals })
}
