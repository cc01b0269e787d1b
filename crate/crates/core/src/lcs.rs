//! Exact longest common subsequence.
//!
//! Lengths come from a bit-parallel row update (one word-sized add per 64
//! columns), so a `4096 x 4096` comparison costs about `4096 * 64` machine
//! words. Witnesses use Hirschberg's divide and conquer on top of the same
//! row update, which keeps memory linear in the input.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Symbol, SubsequenceWitness, Word};

/// Below this many DP cells a subproblem is solved with a full table.
const FULL_TABLE_CELLS: usize = 1 << 12;

/// Match masks of `b`: bit `j` of `masks[s]` is set iff `b[j] == s`.
struct MatchMasks {
    blocks: usize,
    index: Vec<u32>,
    masks: Vec<u64>,
}

impl MatchMasks {
    const ABSENT: u32 = u32::MAX;

    fn new(b: &[Symbol]) -> Self {
        let blocks = b.len().div_ceil(64);
        let alphabet = b.iter().map(|&s| s as usize + 1).max().unwrap_or(0);
        let mut index = vec![Self::ABSENT; alphabet];
        let mut masks = Vec::new();
        for (j, &s) in b.iter().enumerate() {
            let slot = &mut index[s as usize];
            if *slot == Self::ABSENT {
                *slot = (masks.len() / blocks.max(1)) as u32;
                masks.resize(masks.len() + blocks, 0);
            }
            masks[*slot as usize * blocks + j / 64] |= 1 << (j % 64);
        }
        MatchMasks {
            blocks,
            index,
            masks,
        }
    }

    fn mask(&self, s: Symbol) -> Option<&[u64]> {
        match self.index.get(s as usize) {
            Some(&slot) if slot != Self::ABSENT => {
                let start = slot as usize * self.blocks;
                Some(&self.masks[start..start + self.blocks])
            }
            _ => None,
        }
    }
}

/// Runs the row update for every symbol of `a` against `b`. Afterwards the
/// number of zero bits of the result among the first `j` bits equals
/// `LCS(a, b[..j])`.
fn advance_rows(a: &[Symbol], b: &[Symbol]) -> Vec<u64> {
    let masks = MatchMasks::new(b);
    let mut v = vec![u64::MAX; masks.blocks];
    for &c in a {
        let Some(m) = masks.mask(c) else { continue };
        let mut carry = false;
        for (vi, &mi) in v.iter_mut().zip(m) {
            let x = *vi;
            let u = x & mi;
            let (s1, c1) = x.overflowing_add(u);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            carry = c1 || c2;
            *vi = s2 | (x & !mi);
        }
    }
    v
}

fn zeros_in_prefix(v: &[u64], len: usize) -> usize {
    let full = len / 64;
    let mut zeros: usize = v[..full].iter().map(|x| x.count_zeros() as usize).sum();
    let rest = len % 64;
    if rest > 0 {
        let mask = (1u64 << rest) - 1;
        zeros += (!v[full] & mask).count_ones() as usize;
    }
    zeros
}

/// `row[j] = LCS(a, b[..j])` for `j = 0..=|b|`.
fn lcs_row(a: &[Symbol], b: &[Symbol]) -> Vec<usize> {
    let v = advance_rows(a, b);
    let mut row = Vec::with_capacity(b.len() + 1);
    let mut acc = 0;
    row.push(0);
    for j in 0..b.len() {
        if v[j / 64] >> (j % 64) & 1 == 0 {
            acc += 1;
        }
        row.push(acc);
    }
    row
}

fn lcs_len_symbols(a: &[Symbol], b: &[Symbol]) -> usize {
    // bits run over the shorter word
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return 0;
    }
    let v = advance_rows(long, short);
    zeros_in_prefix(&v, short.len())
}

/// Length of a longest common subsequence of `u` and `w`.
pub fn lcs_len(u: &Word, w: &Word) -> usize {
    lcs_len_symbols(u.symbols(), w.symbols())
}

/// Textbook dynamic programme over two rolling rows. Quadratic time and
/// `O(min(|u|, |w|))` memory; kept as an independent route to [`lcs_len`].
pub fn lcs_len_rows(u: &Word, w: &Word) -> usize {
    let (long, short) = if u.len() >= w.len() {
        (u.symbols(), w.symbols())
    } else {
        (w.symbols(), u.symbols())
    };
    let mut prev = vec![0u32; short.len() + 1];
    let mut cur = vec![0u32; short.len() + 1];
    for &x in long {
        for (j, &y) in short.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[short.len()] as usize
}

/// A longest common subsequence of `u` and `w` with its index lists.
pub fn lcs_witness(u: &Word, w: &Word) -> SubsequenceWitness {
    let mut pairs = Vec::new();
    hirschberg(u.symbols(), w.symbols(), 0, 0, &mut pairs);
    let alphabet = u.alphabet_size().max(w.alphabet_size());
    let symbols = pairs.iter().map(|&(i, _)| u.symbols()[i]).collect();
    SubsequenceWitness {
        common: Word::new(symbols, alphabet).expect("symbols come from u"),
        idx_a: pairs.iter().map(|p| p.0).collect(),
        idx_b: pairs.iter().map(|p| p.1).collect(),
    }
}

fn hirschberg(
    a: &[Symbol],
    b: &[Symbol],
    off_a: usize,
    off_b: usize,
    out: &mut Vec<(usize, usize)>,
) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    if a.len() * b.len() <= FULL_TABLE_CELLS || a.len() == 1 {
        full_table(a, b, off_a, off_b, out);
        return;
    }
    let mid = a.len() / 2;
    let forward = lcs_row(&a[..mid], b);
    let ra: Vec<Symbol> = a[mid..].iter().rev().copied().collect();
    let rb: Vec<Symbol> = b.iter().rev().copied().collect();
    let backward = lcs_row(&ra, &rb);
    let m = b.len();
    // first maximizing split keeps as much of b as possible for the right half
    let split = (0..=m)
        .max_by_key(|&j| (forward[j] + backward[m - j], std::cmp::Reverse(j)))
        .expect("nonempty range");
    hirschberg(&a[..mid], &b[..split], off_a, off_b, out);
    hirschberg(&a[mid..], &b[split..], off_a + mid, off_b + split, out);
}

fn full_table(
    a: &[Symbol],
    b: &[Symbol],
    off_a: usize,
    off_b: usize,
    out: &mut Vec<(usize, usize)>,
) {
    // suffix table so the walk runs forwards
    let (n, m) = (a.len(), b.len());
    let width = m + 1;
    let mut t = vec![0u32; (n + 1) * width];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            t[i * width + j] = if a[i] == b[j] {
                t[(i + 1) * width + j + 1] + 1
            } else {
                t[(i + 1) * width + j].max(t[i * width + j + 1])
            };
        }
    }
    let (mut i, mut j) = (0, 0);
    while i < n && j < m {
        if a[i] == b[j] && t[i * width + j] == t[(i + 1) * width + j + 1] + 1 {
            out.push((off_a + i, off_b + j));
            i += 1;
            j += 1;
        } else if t[(i + 1) * width + j] == t[i * width + j] {
            i += 1;
        } else {
            j += 1;
        }
    }
}

/// `LCS(W)`: the best pair of a family and a witness for it.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyLcsResult {
    pub length: usize,
    pub pair: (usize, usize),
    pub witness: SubsequenceWitness,
}

/// Maximum of [`lcs_len`] over unordered pairs; ties go to the
/// lexicographically smallest pair.
pub fn family_lcs(family: &[Word]) -> Result<FamilyLcsResult> {
    if family.len() < 2 {
        return Err(Error::Domain(format!(
            "a family needs at least two words, got {}",
            family.len()
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..family.len())
        .flat_map(|i| (i + 1..family.len()).map(move |j| (i, j)))
        .collect();
    let (length, pair) = pairs
        .par_iter()
        .map(|&(i, j)| (lcs_len(&family[i], &family[j]), (i, j)))
        .reduce(
            || (0, (usize::MAX, usize::MAX)),
            |x, y| {
                if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                    y
                } else {
                    x
                }
            },
        );
    let witness = lcs_witness(&family[pair.0], &family[pair.1]);
    debug_assert_eq!(witness.len(), length);
    Ok(FamilyLcsResult {
        length,
        pair,
        witness,
    })
}

/// Symmetric matrix of pairwise LCS lengths; the diagonal holds word lengths.
pub fn pairwise_matrix(family: &[Word]) -> Vec<Vec<usize>> {
    let n = family.len();
    let flat: Vec<usize> = (0..n * n)
        .into_par_iter()
        .map(|c| {
            let (i, j) = (c / n, c % n);
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => family[i].len(),
                std::cmp::Ordering::Less => lcs_len(&family[i], &family[j]),
                std::cmp::Ordering::Greater => usize::MAX,
            }
        })
        .collect();
    let mut m: Vec<Vec<usize>> = flat.chunks(n.max(1)).map(|r| r.to_vec()).collect();
    for i in 0..n {
        for j in 0..i {
            m[i][j] = m[j][i];
        }
    }
    m.truncate(n);
    m
}
