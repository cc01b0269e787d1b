use serde::Serialize;

use super::annotate::{AnnotatedWord, ZeroClass};
use crate::words::SubsequenceWitness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BadSide {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Shortcut {
    pub pair: (usize, usize),
    /// 1-based ordinal of the shared bad zero.
    pub ordinal: usize,
    pub side: BadSide,
    pub witness: SubsequenceWitness,
}

/// Looks for an ordinal `j` whose zeros are bad on the same side in two
/// words.
///
/// Both left-bad: the first `j` zeros followed by as many ones as both words
/// have after their `j`'th zero. Both right-bad: as many ones as both have
/// before their `j`'th zero, then the zeros from `j` on. Either way the
/// witness is longer than `n/2 + threshold`. The longest such witness is
/// returned (ties: smallest ordinal, left before right, smallest pair).
pub fn bad_pair_shortcut(family: &[AnnotatedWord]) -> Option<Shortcut> {
    if family.len() < 2 {
        return None;
    }
    let zeros = family[0].zeros.len();
    let half = zeros as u64;
    let mut best: Option<(usize, usize, BadSide, (usize, usize))> = None;

    for j in 0..zeros {
        for side in [BadSide::Left, BadSide::Right] {
            let class = match side {
                BadSide::Left => ZeroClass::LeftBad,
                BadSide::Right => ZeroClass::RightBad,
            };
            let mut bad: Vec<(u64, usize)> = family
                .iter()
                .enumerate()
                .filter(|(_, aw)| aw.zeros[j].class == class)
                .map(|(i, aw)| (aw.zeros[j].position, i))
                .collect();
            if bad.len() < 2 {
                continue;
            }
            // left: fewest ones before means most ones after; right: most ones before
            match side {
                BadSide::Left => bad.sort_by_key(|&(p, i)| (p, i)),
                BadSide::Right => bad.sort_by_key(|&(p, i)| (std::cmp::Reverse(p), i)),
            }
            let (p1, i1) = bad[0];
            let (p2, i2) = bad[1];
            let len = match side {
                BadSide::Left => (j + 1) as u64 + (half - p1.max(p2)),
                BadSide::Right => p1.min(p2) + (half - j as u64),
            } as usize;
            let pair = (i1.min(i2), i1.max(i2));
            if best.is_none_or(|b| len > b.0) {
                best = Some((len, j, side, pair));
            }
        }
    }

    let (_, j, side, pair) = best?;
    let (a, b) = (&family[pair.0], &family[pair.1]);
    let mut pairs = Vec::new();
    match side {
        BadSide::Left => {
            for z in 0..=j {
                pairs.push((a.zeros[z].index, b.zeros[z].index));
            }
            let (pa, pb) = (a.zeros[j].position as usize, b.zeros[j].position as usize);
            let m = (a.ones.len() - pa).min(b.ones.len() - pb);
            for o in 0..m {
                pairs.push((a.ones[pa + o], b.ones[pb + o]));
            }
        }
        BadSide::Right => {
            let m = a.zeros[j].position.min(b.zeros[j].position) as usize;
            for o in 0..m {
                pairs.push((a.ones[o], b.ones[o]));
            }
            for z in j..zeros {
                pairs.push((a.zeros[z].index, b.zeros[z].index));
            }
        }
    }
    Some(Shortcut {
        pair,
        ordinal: j + 1,
        side,
        witness: SubsequenceWitness::from_pairs(&a.word, &pairs),
    })
}
