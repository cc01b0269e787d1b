#![allow(dead_code)]

use lcsw::extremal::{build_balanced_layers, build_layer_word};
use lcsw::matcher::{annotate_zeros_with_threshold, MatcherParams};
use lcsw::{Symbol, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn bin(text: &str) -> Word {
    lcsw::words::parse_word(text, 2).unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize, k: usize) -> Word {
    let symbols = (0..n).map(|_| rng.gen_range(0..k as Symbol)).collect();
    Word::new(symbols, k).unwrap()
}

pub fn random_balanced<R: Rng>(rng: &mut R, n: usize) -> Word {
    let mut s: Vec<Symbol> = (0..n).map(|i| (i >= n / 2) as Symbol).collect();
    s.shuffle(rng);
    Word::new(s, 2).unwrap()
}

/// `0^a`, a shuffled balanced middle, `1^a` (or mirrored): many bad zeros.
pub fn skewed<R: Rng>(rng: &mut R, n: usize) -> Word {
    let a = rng.gen_range(0..=n / 4);
    let mid = random_balanced(rng, n - 2 * a);
    let (head, tail) = if rng.gen_bool(0.5) { (0, 1) } else { (1, 0) };
    let mut s = vec![head; a];
    s.extend_from_slice(mid.symbols());
    s.extend(std::iter::repeat_n(tail, a));
    Word::new(s, 2).unwrap()
}

/// A periodic run word with random run length, rotated and locally perturbed.
pub fn perturbed_runs<R: Rng>(rng: &mut R, n: usize) -> Word {
    let m = rng.gen_range(1..=(n / 2).min(4 * (n as f64).sqrt() as usize));
    let w = build_layer_word(n, 2, m, rng.gen_bool(0.5)).unwrap();
    let mut s = w.into_symbols();
    let rot = rng.gen_range(0..n);
    s.rotate_left(rot);
    for _ in 0..rng.gen_range(0..=n / 16) {
        let i = rng.gen_range(0..n - 1);
        s.swap(i, i + 1);
    }
    Word::new(s, 2).unwrap()
}

/// Irregular runs of zeros and ones of similar lengths: long zero-rich
/// stretches whose zeros stay close to their expected positions.
pub fn zero_rich<R: Rng>(rng: &mut R, n: usize) -> Word {
    let cap = 2 * (n as f64).sqrt() as usize;
    let (mut zeros, mut ones) = (n / 2, n / 2);
    let mut s = Vec::with_capacity(n);
    while zeros > 0 {
        let run = rng.gen_range(1..=cap).min(zeros);
        s.extend(std::iter::repeat_n(0, run));
        zeros -= run;
        let sep = (run + rng.gen_range(0..=4)).saturating_sub(2).min(ones);
        s.extend(std::iter::repeat_n(1, sep));
        ones -= sep;
    }
    s.extend(std::iter::repeat_n(1, ones));
    Word::new(s, 2).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Random,
    Extremal,
    Skewed,
    Runs,
    ZeroRich,
    Mixed,
}

pub const KINDS: [FamilyKind; 6] = [
    FamilyKind::Random,
    FamilyKind::Extremal,
    FamilyKind::Skewed,
    FamilyKind::Runs,
    FamilyKind::ZeroRich,
    FamilyKind::Mixed,
];

fn one_word(rng: &mut ChaCha8Rng, kind: FamilyKind, n: usize) -> Word {
    match kind {
        FamilyKind::Random => random_balanced(rng, n),
        FamilyKind::Skewed => skewed(rng, n),
        FamilyKind::Runs => perturbed_runs(rng, n),
        FamilyKind::ZeroRich => zero_rich(rng, n),
        FamilyKind::Extremal | FamilyKind::Mixed => {
            let pick = [FamilyKind::Random, FamilyKind::Skewed, FamilyKind::Runs, FamilyKind::ZeroRich]
                [rng.gen_range(0..4)];
            one_word(rng, pick, n)
        }
    }
}

/// `r + 2` balanced binary words of length `n`.
pub fn family(rng: &mut ChaCha8Rng, kind: FamilyKind, n: usize, r: usize) -> Vec<Word> {
    match kind {
        FamilyKind::Extremal => {
            let mut f = build_balanced_layers(n, 2, r).unwrap();
            if rng.gen_bool(0.5) {
                let i = rng.gen_range(0..f.len());
                f[i] = one_word(rng, FamilyKind::Random, n);
            }
            f
        }
        _ => (0..r + 2).map(|_| one_word(rng, kind, n)).collect(),
    }
}

/// Effective constants large enough for non-trivial thresholds at desk
/// sizes.
pub fn scaled_params(rng: &mut ChaCha8Rng, r: usize) -> MatcherParams {
    let alpha = [0.02, 0.05, 0.1, 0.2, 0.5, 1.0][rng.gen_range(0..6)];
    let beta = [0.01, 0.02, 0.05, 0.1][rng.gen_range(0..4)];
    MatcherParams::defaults(r).with_alpha(alpha).with_beta(beta)
}

/// Constants with every zero good, so no shortcut applies and the full
/// pipeline runs.
pub fn permissive_params(rng: &mut ChaCha8Rng, words: &[Word], r: usize) -> MatcherParams {
    let n = words[0].len();
    let max_dev = words
        .iter()
        .flat_map(|w| annotate_zeros_with_threshold(w, u64::MAX).unwrap())
        .map(|z| z.deviation.unsigned_abs())
        .max()
        .unwrap_or(0);
    let scale = (n as f64).powf(1.0 - 1.0 / r as f64);
    let beta = [0.01, 0.02, 0.05, 0.1][rng.gen_range(0..4)];
    MatcherParams::defaults(r)
        .with_alpha((max_dev as f64 + 0.5) / scale)
        .with_beta(beta)
}
