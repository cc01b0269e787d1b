//! Brute-force references: a memoized recursive LCS, exhaustive word
//! enumeration and exact family minima over small spaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Symbol, Word};

/// Default cap on `pairs x DP cells + selections x pairs per selection`.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// LCS length by top-down memoized recursion on suffixes.
///
/// Recursion depth is `|u| + |w|`, so keep inputs short.
pub fn lcs_reference(u: &Word, w: &Word) -> usize {
    fn go(a: &[Symbol], b: &[Symbol], i: usize, j: usize, memo: &mut [Option<u32>], width: usize) -> u32 {
        if i == a.len() || j == b.len() {
            return 0;
        }
        if let Some(v) = memo[i * width + j] {
            return v;
        }
        let v = if a[i] == b[j] {
            1 + go(a, b, i + 1, j + 1, memo, width)
        } else {
            go(a, b, i + 1, j, memo, width).max(go(a, b, i, j + 1, memo, width))
        };
        memo[i * width + j] = Some(v);
        v
    }
    let (a, b) = (u.symbols(), w.symbols());
    let mut memo = vec![None; a.len() * b.len()];
    go(a, b, 0, 0, &mut memo, b.len()) as usize
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Number of balanced words `n! / ((n/k)!)^k`, `None` on overflow.
pub fn balanced_count(n: usize, k: usize) -> Option<u128> {
    if k == 0 || n % k != 0 {
        return Some(0);
    }
    let part = (n / k) as u128;
    let mut left = n as u128;
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(binomial(left, part)?)?;
        left -= part;
    }
    Some(acc)
}

fn check_budget(cost: Option<u128>, budget: u128) -> Result<u128> {
    match cost {
        Some(c) if c <= budget => Ok(c),
        Some(c) => Err(Error::BudgetExceeded { cost: c, budget }),
        None => Err(Error::BudgetExceeded {
            cost: u128::MAX,
            budget,
        }),
    }
}

/// Balanced words of length `n` over `[k]` in lexicographic order.
pub struct BalancedWords {
    next: Option<Vec<Symbol>>,
    k: usize,
}

impl Iterator for BalancedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Word::new(cur, self.k).expect("symbols below k"))
    }
}

fn next_permutation(v: &mut [Symbol]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn enumerate_balanced(n: usize, k: usize, budget: u128) -> Result<BalancedWords> {
    if k == 0 || n % k != 0 {
        return Err(Error::Domain(format!("{k} does not divide {n}")));
    }
    check_budget(balanced_count(n, k), budget)?;
    let first: Vec<Symbol> = (0..k as Symbol).flat_map(|c| std::iter::repeat_n(c, n / k)).collect();
    Ok(BalancedWords {
        next: Some(first),
        k,
    })
}

/// All `k^n` words of length `n` in lexicographic order.
pub struct AllWords {
    next: Option<Vec<Symbol>>,
    k: usize,
}

impl Iterator for AllWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let top = self.k as Symbol - 1;
        if let Some(p) = succ.iter().rposition(|&c| c < top) {
            succ[p] += 1;
            succ[p + 1..].fill(0);
            self.next = Some(succ);
        }
        Some(Word::new(cur, self.k).expect("symbols below k"))
    }
}

pub fn enumerate_all(n: usize, k: usize, budget: u128) -> Result<AllWords> {
    if k == 0 {
        return Err(Error::Domain("alphabet must be non-empty".into()));
    }
    check_budget((k as u128).checked_pow(n as u32), budget)?;
    Ok(AllWords {
        next: Some(vec![0; n]),
        k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Universe {
    AllWords,
    BalancedOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilySpace {
    pub n: usize,
    pub k: usize,
    pub universe: Universe,
    /// Family size.
    pub t: usize,
    /// Allow a word to be picked more than once.
    pub multiset: bool,
}

impl FamilySpace {
    pub fn words(&self, budget: u128) -> Result<Vec<Word>> {
        Ok(match self.universe {
            Universe::AllWords => enumerate_all(self.n, self.k, budget)?.collect(),
            Universe::BalancedOnly => enumerate_balanced(self.n, self.k, budget)?.collect(),
        })
    }

    fn universe_size(&self) -> Option<u128> {
        match self.universe {
            Universe::AllWords => (self.k as u128).checked_pow(self.n as u32),
            Universe::BalancedOnly => balanced_count(self.n, self.k),
        }
    }

    /// `C(|U|,2) n^2 + selections C(t,2)`.
    pub fn cost(&self) -> Option<u128> {
        let u = self.universe_size()?;
        let t = self.t as u128;
        let selections = if self.multiset {
            binomial((u + t).checked_sub(1)?, t)?
        } else {
            binomial(u, t)?
        };
        let n2 = (self.n as u128).checked_mul(self.n as u128)?;
        binomial(u, 2)?
            .checked_mul(n2)?
            .checked_add(selections.checked_mul(binomial(t, 2)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMinimum {
    pub value: usize,
    /// The first minimizing family in lexicographic selection order.
    pub family: Vec<Word>,
    pub cost: u128,
}

/// Exact `min over t-selections W of max over pairs LCS`, by depth-first
/// search over index selections with the running maximum as a bound.
pub fn min_family_lcs(space: &FamilySpace, budget: u128) -> Result<FamilyMinimum> {
    if space.t < 2 {
        return Err(Error::Domain("family size must be at least 2".into()));
    }
    if space.k == 0 {
        return Err(Error::Domain("alphabet must be non-empty".into()));
    }
    let cost = check_budget(space.cost(), budget)?;
    let words = space.words(budget)?;
    if !space.multiset && words.len() < space.t {
        return Err(Error::Domain(format!(
            "universe has {} words, fewer than t = {}",
            words.len(),
            space.t
        )));
    }
    let m = words.len();
    let mut matrix = vec![0usize; m * m];
    for i in 0..m {
        matrix[i * m + i] = space.n;
        for j in i + 1..m {
            let v = lcs_reference(&words[i], &words[j]);
            matrix[i * m + j] = v;
            matrix[j * m + i] = v;
        }
    }

    struct Search<'a> {
        m: usize,
        t: usize,
        multiset: bool,
        matrix: &'a [usize],
        best: usize,
        best_sel: Vec<usize>,
        sel: Vec<usize>,
    }
    impl Search<'_> {
        fn dfs(&mut self, from: usize, cur: usize) {
            if self.sel.len() == self.t {
                if cur < self.best {
                    self.best = cur;
                    self.best_sel = self.sel.clone();
                }
                return;
            }
            for i in from..self.m {
                let worst = self
                    .sel
                    .iter()
                    .map(|&s| self.matrix[s * self.m + i])
                    .fold(cur, usize::max);
                if worst >= self.best {
                    continue;
                }
                self.sel.push(i);
                self.dfs(if self.multiset { i } else { i + 1 }, worst);
                self.sel.pop();
            }
        }
    }
    let mut search = Search {
        m,
        t: space.t,
        multiset: space.multiset,
        matrix: &matrix,
        best: usize::MAX,
        best_sel: Vec::new(),
        sel: Vec::new(),
    };
    search.dfs(0, 0);
    Ok(FamilyMinimum {
        value: search.best,
        family: search.best_sel.iter().map(|&i| words[i].clone()).collect(),
        cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn w(t: &str) -> Word {
        parse_word(t, 2).unwrap()
    }

    #[test]
    fn reference_examples() {
        assert_eq!(lcs_reference(&w("0011"), &w("1100")), 2);
        assert_eq!(lcs_reference(&w("0110"), &w("0110")), 4);
        assert_eq!(lcs_reference(&w(""), &w("0110")), 0);
    }

    #[test]
    fn balanced_enumeration() {
        let texts: Vec<String> = enumerate_balanced(4, 2, DEFAULT_BUDGET).unwrap().map(|w| w.to_text()).collect();
        assert_eq!(texts, ["0011", "0101", "0110", "1001", "1010", "1100"]);
        let texts: Vec<String> = enumerate_balanced(2, 2, DEFAULT_BUDGET).unwrap().map(|w| w.to_text()).collect();
        assert_eq!(texts, ["01", "10"]);
        assert_eq!(enumerate_balanced(6, 3, DEFAULT_BUDGET).unwrap().count(), 90);
        assert_eq!(balanced_count(6, 3), Some(90));
        assert!(enumerate_balanced(5, 2, DEFAULT_BUDGET).is_err());
        assert!(matches!(
            enumerate_balanced(40, 2, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn all_words_enumeration() {
        let texts: Vec<String> = enumerate_all(2, 3, DEFAULT_BUDGET).unwrap().map(|w| w.to_text()).collect();
        assert_eq!(texts, ["00", "01", "02", "10", "11", "12", "20", "21", "22"]);
        assert_eq!(enumerate_all(0, 2, DEFAULT_BUDGET).unwrap().count(), 1);
    }

    fn space(n: usize, k: usize, universe: Universe, t: usize) -> FamilySpace {
        FamilySpace {
            n,
            k,
            universe,
            t,
            multiset: false,
        }
    }

    #[test]
    fn family_minima() {
        let all = min_family_lcs(&space(4, 2, Universe::AllWords, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(all.value, 2);
        let bal = min_family_lcs(&space(4, 2, Universe::BalancedOnly, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(bal.value, 3);
        let pair = min_family_lcs(&space(4, 2, Universe::BalancedOnly, 2), DEFAULT_BUDGET).unwrap();
        assert_eq!(pair.value, 2);
        let texts: Vec<String> = pair.family.iter().map(|w| w.to_text()).collect();
        assert_eq!(texts, ["0011", "1010"]);
        assert_eq!(lcs_reference(&w("0011"), &w("1100")), 2);
    }

    #[test]
    fn unary_compatible_minimum_is_zero() {
        for (k, n) in [(2, 3), (2, 4), (3, 3), (3, 4)] {
            let m = min_family_lcs(&space(n, k, Universe::AllWords, k), DEFAULT_BUDGET).unwrap();
            assert_eq!(m.value, 0, "k={k} n={n}");
        }
    }

    #[test]
    fn multiset_mode_allows_repeats() {
        let mut s = space(2, 2, Universe::BalancedOnly, 3);
        assert!(min_family_lcs(&s, DEFAULT_BUDGET).is_err());
        s.multiset = true;
        assert_eq!(min_family_lcs(&s, DEFAULT_BUDGET).unwrap().value, 2);
    }

    #[test]
    fn budget_is_enforced() {
        let s = space(8, 2, Universe::AllWords, 3);
        assert!(matches!(min_family_lcs(&s, 1000), Err(Error::BudgetExceeded { .. })));
    }
}
