use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::annotate::{annotate_word, AnnotatedWord};
use super::assemble::{assemble_witness, baseline_witness, Assembly};
use super::blocks::{partition_blocks, BlockPartition};
use super::intervals::{choose_rich_intervals, IntervalStage};
use super::matching::{noncrossing_matching, Matching};
use super::select::{select_pair_and_type, PairSelection};
use super::shift::{best_shift, ShiftOutcome};
use super::shortcut::bad_pair_shortcut;
use super::{asymptotic_regime, MatcherParams, Thresholds};
use crate::error::{Error, Result};
use crate::words::{SubsequenceWitness, Word};

/// Pipeline stages, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Baseline,
    Identical,
    Shortcut,
    FirstSymbol,
    Select,
    Intervals,
    Shift,
    Matching,
    Assembly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Sizes {
    #[serde(rename = "T")]
    pub t_set: usize,
    #[serde(rename = "S")]
    pub s_set: usize,
    #[serde(rename = "E")]
    pub e: usize,
    pub lambda: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Guarantee {
    /// `n/2 + alpha n^{1-1/r}` (`n/2 + 1` for `r = 1`, `n/2` for `r = 0`).
    pub value: f64,
    /// `n/2 - beta n^{1-1/r} + n^{1-1/r} / (20000 r^6)`.
    pub final_display_value: f64,
    /// Default constants, `n >= (10r)^{9r}` and the degree bound held.
    pub asymptotic_flag: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatcherTrace {
    pub thresholds: Thresholds,
    /// Last stage the pipeline completed.
    pub reached: Stage,
    /// Construction the returned witness comes from.
    pub source: Stage,
    pub s_k: Vec<usize>,
    /// Disjoint intervals kept in each word of the pair.
    pub intervals: [usize; 2],
    pub max_degree: usize,
    pub degree_bound: u64,
    /// `max_degree <= degree_bound + 1`.
    pub degree_within_bound: bool,
    /// `ceil(|E| / (2 max_degree))`, a floor for `lambda`.
    pub lambda_floor: usize,
    pub swaps: usize,
    pub q_max: Option<i64>,
    pub average_edges: Option<f64>,
    pub same_block_pairs: Option<u64>,
    pub p_materialized: Option<f64>,
    pub p_formula: Option<f64>,
    pub assembly_bound: Option<u64>,
    pub gaps_within_fifth: Option<bool>,
}

/// Intermediate results kept for inspection; not serialized.
#[derive(Debug, Clone, Default)]
pub struct StageData {
    pub annotated: Vec<AnnotatedWord>,
    pub selection: Option<PairSelection>,
    pub blocks: Option<[BlockPartition; 2]>,
    pub intervals: Option<IntervalStage>,
    pub shift: Option<ShiftOutcome>,
    pub matching: Option<Matching>,
    pub assembly: Option<Assembly>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatcherReport {
    pub n: usize,
    pub r: usize,
    pub pair: (usize, usize),
    pub shortcut_used: bool,
    pub t: Option<u32>,
    pub sizes: Sizes,
    #[serde(rename = "Q")]
    pub q: Option<i64>,
    #[serde(serialize_with = "witness_json")]
    pub witness: SubsequenceWitness,
    pub guarantee: Guarantee,
    pub params: MatcherParams,
    pub trace: MatcherTrace,
    #[serde(skip)]
    pub stages: StageData,
}

fn witness_json<S: Serializer>(w: &SubsequenceWitness, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct View<'a> {
        length: usize,
        common: String,
        indices_a: &'a [usize],
        indices_b: &'a [usize],
    }
    View {
        length: w.len(),
        common: w.common.to_text(),
        indices_a: &w.idx_a,
        indices_b: &w.idx_b,
    }
    .serialize(s)
}

impl MatcherReport {
    pub fn length(&self) -> usize {
        self.witness.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut()
            .expect("report is an object")
            .insert("version".into(), crate::VERSION.into());
        v
    }
}

/// Two of three or more words share a first symbol `c`; all `n/2` copies of
/// the other symbol follow it in both, giving `c d^{n/2}`.
fn first_symbol_witness(words: &[Word]) -> Option<((usize, usize), SubsequenceWitness)> {
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let (a, b) = (words[i].symbols(), words[j].symbols());
            if a.is_empty() || a[0] != b[0] {
                continue;
            }
            let other = 1 - a[0];
            let rest = |w: &[u32]| -> Vec<usize> {
                (1..w.len()).filter(|&p| w[p] == other).collect()
            };
            let (ra, rb) = (rest(a), rest(b));
            let pairs: Vec<(usize, usize)> = std::iter::once((0, 0)).chain(ra.into_iter().zip(rb)).collect();
            return Some(((i, j), SubsequenceWitness::from_pairs(&words[i], &pairs)));
        }
    }
    None
}

/// First pair of equal words; their common subsequence is the whole word.
fn identical_pair(words: &[Word]) -> Option<(usize, usize)> {
    (0..words.len()).find_map(|i| (i + 1..words.len()).find(|&j| words[i] == words[j]).map(|j| (i, j)))
}

fn validate_family(words: &[Word], r: usize) -> Result<usize> {
    if words.len() != r + 2 {
        return Err(Error::Arity {
            expected: r + 2,
            actual: words.len(),
        });
    }
    let n = words[0].len();
    for w in words {
        if w.len() != n {
            return Err(Error::Malformed(format!(
                "words must have equal length, got {} and {}",
                n,
                w.len()
            )));
        }
    }
    Ok(n)
}

/// Runs the full pipeline on `r + 2` balanced binary words of equal length.
///
/// The result never falls below the `0^{n/2}` baseline: every stage that
/// comes up empty leaves the best witness found so far in place.
pub fn run_matcher(words: &[Word], params: &MatcherParams) -> Result<MatcherReport> {
    params.validate()?;
    let r = params.r;
    let n = validate_family(words, r)?;
    let thresholds = Thresholds::new(n, params);
    let annotated: Vec<AnnotatedWord> = words
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            annotate_word(w, &thresholds).map_err(|e| match e {
                Error::NotBalancedBinary { .. } => Error::NotBalancedBinary { index: i },
                e => e,
            })
        })
        .collect::<Result<_>>()?;

    let scale = thresholds.scale();
    let rf = r.max(1) as f64;
    let half = n as f64 / 2.0;
    let mut report = MatcherReport {
        n,
        r,
        pair: (0, 1),
        shortcut_used: false,
        t: None,
        sizes: Sizes::default(),
        q: None,
        witness: baseline_witness(&annotated[0], &annotated[1]),
        guarantee: Guarantee {
            value: match r {
                0 => half,
                1 => half + 1.0,
                _ => half + params.alpha_eff * scale,
            },
            final_display_value: half - params.beta_eff * scale + scale / (20000.0 * rf.powi(6)),
            asymptotic_flag: false,
        },
        params: *params,
        trace: MatcherTrace {
            degree_bound: thresholds.degree_bound,
            thresholds,
            reached: Stage::Baseline,
            source: Stage::Baseline,
            s_k: Vec::new(),
            intervals: [0, 0],
            max_degree: 0,
            degree_within_bound: true,
            lambda_floor: 0,
            swaps: 0,
            q_max: None,
            average_edges: None,
            same_block_pairs: None,
            p_materialized: None,
            p_formula: None,
            assembly_bound: None,
            gaps_within_fifth: None,
        },
        stages: StageData::default(),
    };

    if let Some(pair) = identical_pair(words) {
        report.pair = pair;
        report.witness = SubsequenceWitness::from_pairs(&words[pair.0], &(0..n).map(|i| (i, i)).collect::<Vec<_>>());
        report.trace.reached = Stage::Identical;
        report.trace.source = Stage::Identical;
        report.stages.annotated = annotated;
        return Ok(report);
    }
    if r == 0 {
        report.stages.annotated = annotated;
        return Ok(report);
    }

    report.trace.reached = Stage::Shortcut;
    if let Some(sc) = bad_pair_shortcut(&annotated) {
        if sc.witness.len() > report.witness.len() {
            report.pair = sc.pair;
            report.witness = sc.witness;
            report.shortcut_used = true;
            report.trace.source = Stage::Shortcut;
        }
    }

    if r == 1 {
        report.trace.reached = Stage::FirstSymbol;
        if let Some((pair, w)) = first_symbol_witness(words) {
            if w.len() > report.witness.len() {
                report.pair = pair;
                report.witness = w;
                report.shortcut_used = false;
                report.trace.source = Stage::FirstSymbol;
            }
        }
        report.stages.annotated = annotated;
        return Ok(report);
    }
    if report.shortcut_used {
        report.stages.annotated = annotated;
        return Ok(report);
    }

    let result = run_pipeline(&annotated, params, &mut report);
    report.stages.annotated = annotated;
    result?;
    report.guarantee.asymptotic_flag = params.uses_default_constants()
        && asymptotic_regime(n, r)
        && report.trace.degree_within_bound;
    Ok(report)
}

fn run_pipeline(annotated: &[AnnotatedWord], params: &MatcherParams, report: &mut MatcherReport) -> Result<()> {
    let thresholds = report.trace.thresholds.clone();
    let Some(selection) = select_pair_and_type(annotated, params.r) else {
        return Ok(());
    };
    report.trace.reached = Stage::Select;
    let (i1, i2) = selection.pair;
    let (a, b) = (&annotated[i1], &annotated[i2]);
    report.pair = selection.pair;
    report.witness = baseline_witness(a, b);
    report.t = Some(selection.t);
    report.sizes.t_set = selection.ordinals.len();

    let blocks = [
        partition_blocks(&a.word, thresholds.block_ones),
        partition_blocks(&b.word, thresholds.block_ones),
    ];
    let stage = choose_rich_intervals([a, b], &selection, [&blocks[0], &blocks[1]], &thresholds);
    report.trace.reached = Stage::Intervals;
    report.sizes.s_set = stage.consistent.len();
    report.trace.s_k = stage.s_sizes();
    report.trace.intervals = [stage.left.len(), stage.right.len()];
    report.stages.selection = Some(selection);
    report.stages.blocks = Some(blocks);

    if stage.left.is_empty() || stage.right.is_empty() {
        report.stages.intervals = Some(stage);
        return Ok(());
    }
    let shift = best_shift(&stage.left, &stage.right, stage.t, &thresholds, params.beta_eff, params.shift)?;
    report.stages.intervals = Some(stage);
    report.trace.reached = Stage::Shift;
    report.q = Some(shift.graph.q);
    report.sizes.e = shift.graph.edges.len();
    report.trace.q_max = Some(shift.q_max);
    report.trace.average_edges = Some(shift.average_edges);
    report.trace.same_block_pairs = Some(shift.same_block_pairs);
    report.trace.p_materialized = Some(shift.p_materialized);
    report.trace.p_formula = Some(shift.p_formula);

    let matching = noncrossing_matching(&shift.graph);
    report.trace.reached = Stage::Matching;
    report.sizes.lambda = matching.pairs.len();
    report.trace.max_degree = matching.max_degree;
    report.trace.degree_within_bound = matching.max_degree as u64 <= thresholds.degree_bound + 1;
    report.trace.swaps = matching.swaps;
    report.trace.lambda_floor = if matching.max_degree == 0 {
        0
    } else {
        report.sizes.e.div_ceil(2 * matching.max_degree)
    };

    let assembly = assemble_witness(&matching, &shift.graph, [a, b]);
    report.trace.reached = Stage::Assembly;
    report.trace.assembly_bound = Some(assembly.bound);
    report.trace.gaps_within_fifth = Some(assembly.gaps_within_fifth);
    if assembly.witness.len() > report.witness.len() {
        report.witness = assembly.witness.clone();
        report.trace.source = Stage::Assembly;
    }
    report.stages.shift = Some(shift);
    report.stages.matching = Some(matching);
    report.stages.assembly = Some(assembly);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::build_balanced_layers;
    use crate::lcs::lcs_len;
    use crate::words::parse_word;

    fn fam(texts: &[&str]) -> Vec<Word> {
        texts.iter().map(|t| parse_word(t, 2).unwrap()).collect()
    }

    #[test]
    fn identical_words_give_full_length() {
        let w = "0110100110010110";
        let words = fam(&[w, w, w, w]);
        let params = MatcherParams::defaults(2).with_alpha(0.5).with_beta(0.25);
        let rep = run_matcher(&words, &params).unwrap();
        assert_eq!(rep.length(), 16);
        assert_eq!(rep.pair, (0, 1));
        assert!(rep.witness.validates(&words[0], &words[1]));
    }

    #[test]
    fn r1_triples_reach_half_plus_one() {
        let words = fam(&["01011010", "10100101", "00111100"]);
        let rep = run_matcher(&words, &MatcherParams::defaults(1)).unwrap();
        assert!(rep.length() >= 5);
        let (i, j) = rep.pair;
        assert!(rep.witness.validates(&words[i], &words[j]));
    }

    #[test]
    fn r0_returns_baseline() {
        let words = fam(&["0101", "1010"]);
        let rep = run_matcher(&words, &MatcherParams::defaults(0)).unwrap();
        assert_eq!(rep.witness.common.to_text(), "00");
    }

    #[test]
    fn layer_family_is_valid() {
        let words = build_balanced_layers(1024, 2, 2).unwrap();
        let params = MatcherParams::defaults(2).with_alpha(0.5).with_beta(0.1);
        let rep = run_matcher(&words, &params).unwrap();
        let (i, j) = rep.pair;
        assert!(rep.witness.validates(&words[i], &words[j]));
        assert!(rep.length() >= 512);
        assert!(rep.length() <= lcs_len(&words[i], &words[j]));
        assert!(!rep.guarantee.asymptotic_flag);
    }

    #[test]
    fn arity_and_balance_are_checked() {
        let words = fam(&["0101", "1010", "0011"]);
        assert!(matches!(
            run_matcher(&words, &MatcherParams::defaults(2)),
            Err(Error::Arity { expected: 4, actual: 3 })
        ));
        let words = fam(&["0111", "1010", "0011"]);
        assert!(run_matcher(&words, &MatcherParams::defaults(1)).is_err());
    }

    #[test]
    fn json_keys_are_fixed() {
        let words = fam(&["0101", "1010", "0011", "1100"]);
        let rep = run_matcher(&words, &MatcherParams::defaults(2).with_alpha(1.0)).unwrap();
        let v = rep.to_json();
        for key in ["version", "pair", "shortcut_used", "t", "sizes", "Q", "witness", "guarantee", "params"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        for key in ["T", "S", "E", "lambda"] {
            assert!(v["sizes"].get(key).is_some(), "{key}");
        }
        assert_eq!(v["witness"]["length"], rep.length());
    }
}
