//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

mod common;

use std::time::Instant;

use lcsw::extremal::{bound_values, build_baseline_family, build_family_main, layer_scales, BaselineMode};
use lcsw::gamma::estimate_gamma;
use lcsw::lcs::{family_lcs, lcs_len};
use lcsw::matcher::{annotate_zeros_with_threshold, best_shift, run_matcher, MatcherReport, ShiftStrategy};
use lcsw::oracle::{enumerate_all, lcs_reference, min_family_lcs, FamilySpace, Universe, DEFAULT_BUDGET};
use lcsw::words::is_subsequence;
use lcsw::Word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{family, permissive_params, random_balanced, random_word, scaled_params, KINDS};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn oracle_equivalence() -> Outcome {
    let words: Vec<Word> = (0..=8).flat_map(|n| enumerate_all(n, 2, DEFAULT_BUDGET).unwrap()).collect();
    let mut exhaustive = 0usize;
    let mut mismatches = 0usize;
    for i in 0..words.len() {
        for j in i..words.len() {
            exhaustive += 1;
            if lcs_len(&words[i], &words[j]) != lcs_reference(&words[i], &words[j]) {
                mismatches += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=4);
        let (la, lb) = (rng.gen_range(0..=64), rng.gen_range(0..=64));
        let (a, b) = (random_word(&mut rng, la, k), random_word(&mut rng, lb, k));
        if lcs_len(&a, &b) != lcs_reference(&a, &b) {
            mismatches += 1;
        }
    }
    Outcome::new(
        mismatches == 0,
        format!("{exhaustive} exhaustive binary pairs + 1000 random pairs, {mismatches} mismatches"),
    )
}

fn unary_zero() -> Outcome {
    let values: Vec<usize> = (2..=5)
        .map(|k| family_lcs(&build_baseline_family(20, k, BaselineMode::Unary(k)).unwrap()).unwrap().length)
        .collect();
    Outcome::new(values.iter().all(|&v| v == 0), format!("k=2..5 at n=20: {values:?}"))
}

fn k_plus_one() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for k in 2..=4 {
        let n = 20 * k;
        let v = family_lcs(&build_baseline_family(n, k, BaselineMode::KPlusOne).unwrap()).unwrap().length;
        pass &= v == n / k;
        parts.push(format!("k={k}: {v} (n/k={})", n / k));
    }
    let space = FamilySpace {
        n: 4,
        k: 2,
        universe: Universe::AllWords,
        t: 3,
        multiset: false,
    };
    let min = min_family_lcs(&space, DEFAULT_BUDGET).unwrap().value;
    pass &= min == 2;
    parts.push(format!("scan(n=4,k=2,all,t=3)={min}"));
    Outcome::new(pass, parts.join(", "))
}

fn upper_bound() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for k in [2usize, 3] {
        let ns: [usize; 3] = if k == 2 { [256, 1024, 4096] } else { [255, 1023, 4095] };
        for r in [2usize, 3] {
            for n in ns {
                let fam = build_family_main(n, k, r).unwrap();
                let v = family_lcs(&fam).unwrap().length;
                let m = layer_scales(n, k, r).unwrap();
                let bound = bound_values(n, k, r).unwrap().0.value + (k * m[r]) as f64;
                let ok = v as f64 <= bound;
                pass &= ok;
                if !ok {
                    parts.push(format!("k={k} r={r} n={n}: {v} > {bound:.1}"));
                }
            }
        }
    }
    let detail = if parts.is_empty() {
        "12 (k,r,n) cases within n/k + k^(1/r) n^(1-1/r) + k m_r".to_string()
    } else {
        parts.join("; ")
    };
    Outcome::new(pass, detail)
}

fn r1_balanced() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [4usize, 6, 8] {
        let space = FamilySpace {
            n,
            k: 2,
            universe: Universe::BalancedOnly,
            t: 3,
            multiset: false,
        };
        let v = min_family_lcs(&space, DEFAULT_BUDGET).unwrap().value;
        pass &= v == n / 2 + 1;
        parts.push(format!("n={n}: {v}"));
    }
    Outcome::new(pass, parts.join(", "))
}

const NS: [usize; 5] = [256, 512, 1024, 2048, 4096];

fn matcher_validity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut failures = Vec::new();
    let mut improved = 0;
    let mut assembled = 0;
    for case in 0..500 {
        let r = rng.gen_range(2..=3);
        let n = NS[rng.gen_range(0..NS.len())];
        let kind = KINDS[case % KINDS.len()];
        let words = family(&mut rng, kind, n, r);
        let mut params = if case % 3 == 2 {
            permissive_params(&mut rng, &words, r)
        } else {
            scaled_params(&mut rng, r)
        };
        if rng.gen_bool(0.25) {
            params = params.with_shift(ShiftStrategy::Sampled {
                count: rng.gen_range(1..=8),
                seed: rng.gen(),
            });
        }
        let rep = run_matcher(&words, &params).unwrap();
        let again = run_matcher(&words, &params).unwrap();
        let (i, j) = rep.pair;
        let common = &rep.witness.common;
        let lcs = lcs_len(&words[i], &words[j]);
        let checks = [
            rep.witness.validates(&words[i], &words[j])
                && is_subsequence(common, &words[i])
                && is_subsequence(common, &words[j]),
            rep.length() >= n / 2,
            rep.length() <= lcs,
            rep.to_json().to_string() == again.to_json().to_string(),
        ];
        if rep.length() > n / 2 {
            improved += 1;
        }
        if rep.stages.assembly.is_some() {
            assembled += 1;
        }
        if let Some(bad) = checks.iter().position(|c| !c) {
            failures.push(format!("case {case} ({kind:?}, n={n}, r={r}) check {}", ["valid", ">= n/2", "<= lcs", "deterministic"][bad]));
        }
    }
    Outcome::new(
        failures.is_empty(),
        if failures.is_empty() {
            format!("500 instances valid, {improved} above n/2, {assembled} ran the full pipeline")
        } else {
            failures.join("; ")
        },
    )
}

fn check_intervals(rep: &MatcherReport) -> Result<usize, String> {
    let Some(stage) = &rep.stages.intervals else {
        return Ok(0);
    };
    let (i, j) = rep.pair;
    let words = [&rep.stages.annotated[i], &rep.stages.annotated[j]];
    let len = stage.rich_len as usize;
    let mut checked = 0;
    let all = stage
        .chosen
        .iter()
        .flat_map(|(_, a, b)| [a, b])
        .chain(stage.left.iter())
        .chain(stage.right.iter());
    for iv in all {
        let aw = words[iv.side];
        let good = aw.good_in(iv.start, iv.end + 1);
        let ones = aw.ones_in(iv.start, iv.end + 1);
        let ends_good = aw.zeros.iter().any(|z| z.index == iv.start && z.is_good())
            && aw.zeros.iter().any(|z| z.index == iv.end && z.is_good());
        if good != len || ones > len / 10 || !ends_good || ones as u64 != iv.ones_count {
            return Err(format!("interval {iv:?}: good={good} ones={ones} L={len}"));
        }
        checked += 1;
    }
    for side in [&stage.left, &stage.right] {
        for p in side.windows(2) {
            if p[0].overlaps(&p[1]) || p[0].start > p[1].start {
                return Err("selected intervals overlap".into());
            }
        }
    }
    Ok(checked)
}

fn stage_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut literal_violations = 0usize;
    let mut slack_violations = 0usize;
    let mut first_violation = None;
    for s in 0..10_000 {
        let n = NS[rng.gen_range(0..3)];
        let w = if s % 2 == 0 {
            random_balanced(&mut rng, n)
        } else {
            let kind = KINDS[rng.gen_range(0..KINDS.len())];
            family(&mut rng, kind, n, 2).swap_remove(rng.gen_range(0..4))
        };
        let threshold = rng.gen_range(1..=(n as f64).sqrt() as u64);
        let zeros = annotate_zeros_with_threshold(&w, threshold).unwrap();
        let start = rng.gen_range(0..n);
        let end = rng.gen_range(start..=n);
        let ones = w.symbols()[start..end].iter().filter(|&&c| c == 1).count() as u64;
        let good = zeros.iter().filter(|z| z.is_good() && start <= z.index && z.index < end).count() as u64;
        if good > ones + 2 * threshold {
            literal_violations += 1;
            first_violation.get_or_insert(format!("n={n} thr={threshold} [{start},{end}) N={ones} good={good}"));
        }
        if good > ones + 2 * threshold + 1 {
            slack_violations += 1;
        }
    }

    let mut interval_checks = 0usize;
    let mut problems = Vec::new();
    let mut shifts = 0;
    for case in 0..150 {
        let r = rng.gen_range(2..=3);
        let n = NS[rng.gen_range(0..NS.len())];
        let kind = KINDS[case % KINDS.len()];
        let words = family(&mut rng, kind, n, r);
        let params = if case % 2 == 0 {
            permissive_params(&mut rng, &words, r)
        } else {
            scaled_params(&mut rng, r)
        };
        let rep = run_matcher(&words, &params).unwrap();
        match check_intervals(&rep) {
            Ok(c) => interval_checks += c,
            Err(e) => problems.push(format!("case {case}: {e}")),
        }
        if let (Some(shift), Some(m)) = (&rep.stages.shift, &rep.stages.matching) {
            let g = &shift.graph;
            let monotone = m.pairs.windows(2).all(|p| p[0].0 < p[1].0 && p[0].1 < p[1].1);
            let subset = m.pairs.iter().all(|e| g.edges.binary_search(e).is_ok() && g.is_close(e.0, e.1));
            if !monotone || !subset {
                problems.push(format!("case {case}: matching monotone={monotone} subset={subset}"));
            }
            let stage = rep.stages.intervals.as_ref().unwrap();
            let exhaustive = best_shift(&stage.left, &stage.right, stage.t, &rep.trace.thresholds, params.beta_eff, ShiftStrategy::Exhaustive).unwrap();
            if (exhaustive.graph.edges.len() as f64) < exhaustive.average_edges.ceil() {
                problems.push(format!("case {case}: |E|={} < ceil(avg {})", exhaustive.graph.edges.len(), exhaustive.average_edges));
            }
            shifts += 1;
        }
    }
    let mut detail = format!(
        "subword bound (N + 2 thr) violations {literal_violations}/10000, (N + 2 thr + 1) violations {slack_violations}; {interval_checks} intervals, {shifts} shift/matching stages checked"
    );
    if let Some(v) = first_violation {
        detail.push_str(&format!("; first subword bound violation: {v}"));
    }
    if !problems.is_empty() {
        detail.push_str(&format!("; {}", problems.join("; ")));
    }
    Outcome::new(literal_violations == 0 && problems.is_empty(), detail)
}

fn gamma_experiments() -> Outcome {
    let seed = 20_240_601;
    let g2 = estimate_gamma(2, 2000, 200, seed).unwrap();
    let in_range = (0.75..=0.87).contains(&g2.mean_ratio);
    let concentrated = g2.std_dev <= 2.0 * (2000f64).sqrt();
    let trend: Vec<f64> = [2usize, 8, 32]
        .iter()
        .map(|&k| estimate_gamma(k, 2000, 200, seed).unwrap().gamma_sqrtk)
        .collect();
    let decreasing = trend.windows(2).all(|p| p[1] < p[0]);
    let last_ok = (1.8..=3.4).contains(&trend[2]);
    Outcome::new(
        in_range && concentrated && decreasing && last_ok,
        format!(
            "gamma_2={:.4} (in range: {in_range}), std={:.2} (<= 2 sqrt n: {concentrated}), gamma_k sqrt k for k=2,8,32: {:.4?} (decreasing: {decreasing}, k=32 in [1.8,3.4]: {last_ok})",
            g2.mean_ratio, g2.std_dev, trend
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("oracle equivalence", oracle_equivalence),
        ("unary family LCS is zero", unary_zero),
        ("k+1 family LCS is n/k", k_plus_one),
        ("layered family upper bound", upper_bound),
        ("balanced triples reach n/2+1", r1_balanced),
        ("matcher validity suite", matcher_validity),
        ("stage-level invariants", stage_invariants),
        ("random-word experiments", gamma_experiments),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name} [{:.1}s] {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
