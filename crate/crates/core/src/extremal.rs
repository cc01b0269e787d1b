//! Families of words with small pairwise LCS.
//!
//! The layered family is built from words `w_i` made of runs of length
//! `m_i = round((n/k)^{i/r})` cycling through the alphabet, the reversal of
//! the last layer, and the `k` constant words. Its family LCS stays within
//! `n/k + k^{1/r} n^{1-1/r}` up to rounding of the run lengths.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Symbol, Word};

/// Run length of one layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LayerScale {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub i: usize,
    pub m: usize,
}

fn check_nkr(n: usize, k: usize, r: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!("alphabet size k={k} must be at least 2")));
    }
    if r < 1 {
        return Err(Error::Domain("r must be at least 1".into()));
    }
    if n < k {
        return Err(Error::Domain(format!("n={n} must be at least k={k}")));
    }
    Ok(())
}

/// `m_i = max(1, round((n/k)^{i/r}))`, halves rounding up.
pub fn scale_m(n: usize, k: usize, r: usize, i: usize) -> Result<LayerScale> {
    check_nkr(n, k, r)?;
    if i > r {
        return Err(Error::Domain(format!("layer index {i} exceeds r={r}")));
    }
    let m = if i == 0 {
        1
    } else if i == r {
        // exact when k | n; avoids powf noise at the top layer
        ((n as f64 / k as f64) + 0.5).floor() as usize
    } else {
        let x = (n as f64 / k as f64).powf(i as f64 / r as f64);
        (x + 0.5 + 1e-9).floor() as usize
    };
    Ok(LayerScale {
        n,
        k,
        r,
        i,
        m: m.max(1),
    })
}

/// All run lengths `m_0, .., m_r`.
pub fn layer_scales(n: usize, k: usize, r: usize) -> Result<Vec<usize>> {
    (0..=r).map(|i| scale_m(n, k, r, i).map(|s| s.m)).collect()
}

/// `(0^m 1^m .. (k-1)^m)` repeated, or with descending runs when `reversed`.
///
/// When `k*m` does not divide `n`, the word ends with one run of length
/// `n/k - floor(n/(k m)) * m` per symbol in the same order, so every symbol
/// occurs exactly `n/k` times.
pub fn build_layer_word(n: usize, k: usize, m: usize, reversed: bool) -> Result<Word> {
    if k == 0 || n % k != 0 {
        return Err(Error::Domain(format!("n={n} is not a multiple of k={k}")));
    }
    if m == 0 || n < k * m {
        return Err(Error::Domain(format!("need n >= k*m, got n={n}, k={k}, m={m}")));
    }
    let order: Vec<Symbol> = if reversed {
        (0..k as Symbol).rev().collect()
    } else {
        (0..k as Symbol).collect()
    };
    let reps = n / (k * m);
    let tail = n / k - reps * m;
    let mut symbols = Vec::with_capacity(n);
    for _ in 0..reps {
        for &s in &order {
            symbols.extend(std::iter::repeat_n(s, m));
        }
    }
    if tail > 0 {
        for &s in &order {
            symbols.extend(std::iter::repeat_n(s, tail));
        }
    }
    debug_assert_eq!(symbols.len(), n);
    Word::new(symbols, k)
}

/// `{w_0, .., w_r, rev w_r, 0^n, .., (k-1)^n}`: `r + k + 2` words of length `n`.
pub fn build_family_main(n: usize, k: usize, r: usize) -> Result<Vec<Word>> {
    check_nkr(n, k, r)?;
    if n % k != 0 {
        return Err(Error::Domain(format!("n={n} is not a multiple of k={k}")));
    }
    let scales = layer_scales(n, k, r)?;
    let mut family = Vec::with_capacity(r + k + 2);
    for &m in &scales {
        family.push(build_layer_word(n, k, m, false)?);
    }
    family.push(build_layer_word(n, k, scales[r], true)?);
    for s in 0..k {
        family.push(Word::constant(s as Symbol, n, k)?);
    }
    Ok(family)
}

/// The binary layered family `{w_0, .., w_r, rev w_r}` (`r + 2` balanced words).
pub fn build_balanced_layers(n: usize, k: usize, r: usize) -> Result<Vec<Word>> {
    let mut family = build_family_main(n, k, r)?;
    family.truncate(r + 2);
    Ok(family)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineMode {
    /// `{0^n, .., (t-1)^n}`: pairwise LCS zero.
    Unary(usize),
    /// The `k` constant words plus `(01..(k-1))^{n/k}`.
    KPlusOne,
}

pub fn build_baseline_family(n: usize, k: usize, mode: BaselineMode) -> Result<Vec<Word>> {
    if k < 1 {
        return Err(Error::Domain("alphabet size must be at least 1".into()));
    }
    match mode {
        BaselineMode::Unary(t) => {
            if t < 2 || t > k {
                return Err(Error::Domain(format!("unary family needs 2 <= t <= k, got t={t}, k={k}")));
            }
            (0..t).map(|s| Word::constant(s as Symbol, n, k)).collect()
        }
        BaselineMode::KPlusOne => {
            if n % k != 0 {
                return Err(Error::Domain(format!("n={n} is not a multiple of k={k}")));
            }
            let mut family: Vec<Word> = (0..k)
                .map(|s| Word::constant(s as Symbol, n, k))
                .collect::<Result<_>>()?;
            let cycle: Vec<Symbol> = (0..n).map(|i| (i % k) as Symbol).collect();
            family.push(Word::new(cycle, k)?);
            Ok(family)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub value: f64,
}

/// `n/k + c * n^{1-1/r}` for a caller-supplied `c`. No default constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundForm {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub base: f64,
    pub rate: f64,
}

impl LowerBoundForm {
    pub fn at(&self, c: f64) -> BoundValue {
        BoundValue {
            n: self.n,
            k: self.k,
            r: self.r,
            value: self.base + c * self.rate,
        }
    }
}

/// Upper bound `n/k + k^{1/r} n^{1-1/r}` met by the layered family, and the
/// shape of the matching lower bound.
pub fn bound_values(n: usize, k: usize, r: usize) -> Result<(BoundValue, LowerBoundForm)> {
    if k < 2 || r < 1 {
        return Err(Error::Domain(format!("need k >= 2 and r >= 1, got k={k}, r={r}")));
    }
    let (nf, kf, rf) = (n as f64, k as f64, r as f64);
    let base = nf / kf;
    let rate = nf.powf(1.0 - 1.0 / rf);
    let upper = BoundValue {
        n,
        k,
        r,
        value: base + kf.powf(1.0 / rf) * rate,
    };
    Ok((
        upper,
        LowerBoundForm {
            n,
            k,
            r,
            base,
            rate,
        },
    ))
}

/// Rounds to three decimals for reporting.
pub fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}
