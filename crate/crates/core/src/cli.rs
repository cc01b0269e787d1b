//! The `lcsw` command line.
//!
//! ```text
//! lcsw construct --n INT --k INT --r INT [--mode main|unary|kplus1] --out PATH
//! lcsw lcs (--family PATH | --a PATH --b PATH) [--witness]
//! lcsw match --family PATH --r INT [--alpha F] [--beta F] [--shift exhaustive|sampled] [--samples INT] [--seed INT]
//! lcsw scan --mode balanced|all --n INT --k INT --t INT [--multiset]
//! lcsw gamma --k INT --n INT --samples INT --seed INT
//! ```
//!
//! Reports are JSON on stdout, or in the file given by `--out` (`construct`
//! uses `--out` for the word file and prints its report). `--csv PATH` adds
//! a flat table. Exit status: 0 success, 2 invalid input, 3 budget exceeded,
//! 1 output failure. `LCSW_BUDGET` overrides the oracle budget.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::extremal::{bound_values, build_baseline_family, build_family_main, layer_scales, BaselineMode};
use crate::gamma::estimate_gamma;
use crate::lcs::{family_lcs, lcs_len, lcs_witness, pairwise_matrix};
use crate::matcher::{run_matcher, MatcherParams, ShiftStrategy};
use crate::oracle::{min_family_lcs, FamilySpace, Universe, DEFAULT_BUDGET};
use crate::words::{parse_word_file, project_with_indices, write_word_file, Symbol, Word};
use crate::VERSION;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lcs(#[from] Error),
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid LCSW_BUDGET value {0:?}")]
    Budget(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lcs(Error::BudgetExceeded { .. }) => 3,
            CliError::Write { .. } => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "lcsw", version, about = "Longest common subsequences in word families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an extremal family to a word file.
    Construct(ConstructArgs),
    /// Pairwise and family LCS of word files.
    Lcs(LcsArgs),
    /// Run the balanced binary matcher.
    Match(MatchArgs),
    /// Exhaustive minimum of the family LCS over a small space.
    Scan(ScanArgs),
    /// Monte Carlo estimate of E[LCS]/n for random words.
    Gamma(GammaArgs),
}

#[derive(Debug, Args)]
struct Csv {
    /// Also write a flat CSV table.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    csv: Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConstructMode {
    Main,
    Unary,
    Kplus1,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum, default_value_t = ConstructMode::Main)]
    mode: ConstructMode,
    /// Word file to write.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    csv: Csv,
}

#[derive(Debug, Args)]
struct LcsArgs {
    #[arg(long, conflicts_with_all = ["a", "b"], required_unless_present_all = ["a", "b"])]
    family: Option<PathBuf>,
    #[arg(long, requires = "b")]
    a: Option<PathBuf>,
    #[arg(long, requires = "a")]
    b: Option<PathBuf>,
    /// Include an explicit common subsequence.
    #[arg(long)]
    witness: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ShiftMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args)]
struct MatchArgs {
    #[arg(long)]
    family: PathBuf,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_enum, default_value_t = ShiftMode::Exhaustive)]
    shift: ShiftMode,
    /// Shifts drawn with `--shift sampled`.
    #[arg(long, default_value_t = 16)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScanMode {
    Balanced,
    All,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    mode: ScanMode,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    /// Allow repeated words.
    #[arg(long)]
    multiset: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct GammaArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the exit status. Reports go to `out`, diagnostics to stderr.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = e.print();
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Construct(a) => construct(a, out),
        Command::Lcs(a) => lcs(a, out),
        Command::Match(a) => matcher(a, out),
        Command::Scan(a) => scan(a, out),
        Command::Gamma(a) => gamma(a, out),
    }
}

fn read_words(path: &Path) -> CliResult<Vec<Word>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_word_file(&text, None)?.words)
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(report: &Value, path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let text = serde_json::to_string_pretty(report).expect("json value serializes") + "\n";
    match path {
        Some(p) => write_file(p, &text),
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Write {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn emit_csv(path: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let Some(path) = path else {
        return Ok(());
    };
    let mut text = header.join(",");
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    write_file(path, &text)
}

fn witness_json(w: &crate::words::SubsequenceWitness) -> Value {
    json!({
        "length": w.len(),
        "common": w.common.to_text(),
        "indices_a": w.idx_a,
        "indices_b": w.idx_b,
    })
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> CliResult<()> {
    let (n, k, r) = (a.n, a.k, a.r);
    let (mode, family, formula, extra) = match a.mode {
        ConstructMode::Main => {
            let family = build_family_main(n, k, r)?;
            let m = layer_scales(n, k, r)?;
            let (upper, _) = bound_values(n, k, r)?;
            let slack = k * m[r];
            let extra = json!({ "m": m, "rounding_slack": slack, "bound_with_slack": upper.value + slack as f64 });
            ("main", family, upper.value, extra)
        }
        ConstructMode::Unary => {
            let family = build_baseline_family(n, k, BaselineMode::Unary(k))?;
            ("unary", family, 0.0, json!({}))
        }
        ConstructMode::Kplus1 => {
            let family = build_baseline_family(n, k, BaselineMode::KPlusOne)?;
            ("kplus1", family, n as f64 / k as f64, json!({}))
        }
    };
    let mut header = format!("n={n} k={k} r={r} mode={mode}");
    if let Some(m) = extra.get("m") {
        header.push_str(&format!(" m={m}"));
    }
    write_file(&a.out, &write_word_file(&[header], &family))?;

    let achieved = family_lcs(&family)?;
    let mut report = json!({
        "version": VERSION,
        "command": "construct",
        "params": { "n": n, "k": k, "r": r, "mode": mode, "out": a.out },
        "words": family.len(),
        "achieved": achieved.length,
        "achieved_pair": achieved.pair,
        "formula": formula,
    });
    if let (Value::Object(dst), Value::Object(src)) = (&mut report, extra) {
        dst.extend(src);
    }
    let rows: Vec<Vec<String>> = family
        .iter()
        .enumerate()
        .map(|(i, w)| vec![i.to_string(), w.len().to_string(), w.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";")])
        .collect();
    emit_csv(a.csv.csv.as_deref(), &["index", "length", "counts"], &rows)?;
    emit(&report, None, out)
}

fn lcs(a: LcsArgs, out: &mut dyn Write) -> CliResult<()> {
    let report = if let Some(path) = &a.family {
        let family = read_words(path)?;
        let best = family_lcs(&family)?;
        let matrix = pairwise_matrix(&family);
        let rows: Vec<Vec<String>> = matrix
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(move |(j, _)| *j > i)
                    .map(move |(j, v)| vec![i.to_string(), j.to_string(), v.to_string()])
            })
            .collect();
        emit_csv(a.output.csv.csv.as_deref(), &["i", "j", "lcs"], &rows)?;
        let mut report = json!({
            "version": VERSION,
            "command": "lcs",
            "params": { "family": path, "witness": a.witness },
            "words": family.len(),
            "matrix": matrix,
            "family_lcs": best.length,
            "pair": best.pair,
        });
        if a.witness {
            report["witness"] = witness_json(&best.witness);
        }
        report
    } else {
        let (pa, pb) = (a.a.as_ref().expect("clap requires a"), a.b.as_ref().expect("clap requires b"));
        let first = |p: &Path| -> CliResult<Word> {
            read_words(p)?
                .into_iter()
                .next()
                .ok_or_else(|| CliError::Usage(format!("{} holds no word", p.display())))
        };
        let (u, w) = (first(pa)?, first(pb)?);
        let length = lcs_len(&u, &w);
        emit_csv(a.output.csv.csv.as_deref(), &["len_a", "len_b", "lcs"], &[vec![u.len().to_string(), w.len().to_string(), length.to_string()]])?;
        let mut report = json!({
            "version": VERSION,
            "command": "lcs",
            "params": { "a": pa, "b": pb, "witness": a.witness },
            "length": length,
        });
        if a.witness {
            report["witness"] = witness_json(&lcs_witness(&u, &w));
        }
        report
    };
    emit(&report, a.output.out.as_deref(), out)
}

/// Letter pair with the smallest total count imbalance over the family
/// (ties: smallest pair).
fn most_balanced_pair(family: &[Word], k: usize) -> (Symbol, Symbol) {
    let counts: Vec<Vec<usize>> = family.iter().map(|w| w.counts()).collect();
    let mut best = (usize::MAX, (0, 1));
    for a in 0..k {
        for b in a + 1..k {
            let score: usize = counts.iter().map(|c| c[a].abs_diff(c[b])).sum();
            if score < best.0 {
                best = (score, (a as Symbol, b as Symbol));
            }
        }
    }
    best.1
}

fn matcher(a: MatchArgs, out: &mut dyn Write) -> CliResult<()> {
    let family = read_words(&a.family)?;
    let k = family.first().map_or(2, |w| w.alphabet_size());
    let shift = match a.shift {
        ShiftMode::Exhaustive => ShiftStrategy::Exhaustive,
        ShiftMode::Sampled => ShiftStrategy::Sampled {
            count: a.samples,
            seed: a.seed,
        },
    };
    let mut params = MatcherParams::defaults(a.r).with_shift(shift);
    if let Some(alpha) = a.alpha {
        params = params.with_alpha(alpha);
    }
    if let Some(beta) = a.beta {
        params = params.with_beta(beta);
    }

    let (binary, maps, letters) = if k > 2 {
        let (x, y) = most_balanced_pair(&family, k);
        let mut binary = Vec::new();
        let mut maps = Vec::new();
        for w in &family {
            let (p, idx) = project_with_indices(w, &[x, y]);
            let bits: Vec<Symbol> = p.symbols().iter().map(|&s| (s == y) as Symbol).collect();
            binary.push(Word::new(bits, 2)?);
            maps.push(idx);
        }
        (binary, Some(maps), Some([x, y]))
    } else {
        let binary = family.iter().map(|w| w.with_alphabet(2)).collect::<crate::Result<Vec<_>>>()?;
        (binary, None, None)
    };

    let rep = run_matcher(&binary, &params)?;
    let mut report = rep.to_json();
    report["command"] = json!("match");
    report["params"]["family"] = json!(a.family);
    report["reduction"] = match letters {
        Some([x, y]) => json!({ "mode": "projection", "original_k": k, "letters": [x, y] }),
        None => json!({ "mode": "none", "original_k": k }),
    };
    if let Some(maps) = maps {
        let (i, j) = rep.pair;
        let wa: Vec<usize> = rep.witness.idx_a.iter().map(|&p| maps[i][p]).collect();
        let wb: Vec<usize> = rep.witness.idx_b.iter().map(|&p| maps[j][p]).collect();
        let common: Vec<Symbol> = wa.iter().map(|&p| family[i].symbols()[p]).collect();
        report["witness"]["indices_a"] = json!(wa);
        report["witness"]["indices_b"] = json!(wb);
        report["witness"]["common"] = json!(Word::new(common, k)?.to_text());
    }
    report["formula"] = json!(rep.guarantee.value);
    report["achieved"] = json!(rep.length());
    emit_csv(
        a.output.csv.csv.as_deref(),
        &["n", "r", "pair_a", "pair_b", "length", "T", "S", "E", "lambda"],
        &[vec![
            rep.n.to_string(),
            rep.r.to_string(),
            rep.pair.0.to_string(),
            rep.pair.1.to_string(),
            rep.length().to_string(),
            rep.sizes.t_set.to_string(),
            rep.sizes.s_set.to_string(),
            rep.sizes.e.to_string(),
            rep.sizes.lambda.to_string(),
        ]],
    )?;
    emit(&report, a.output.out.as_deref(), out)
}

fn budget_from_env() -> CliResult<u128> {
    match std::env::var("LCSW_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Budget(v)),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn scan(a: ScanArgs, out: &mut dyn Write) -> CliResult<()> {
    let budget = budget_from_env()?;
    let universe = match a.mode {
        ScanMode::Balanced => Universe::BalancedOnly,
        ScanMode::All => Universe::AllWords,
    };
    let space = FamilySpace {
        n: a.n,
        k: a.k,
        universe,
        t: a.t,
        multiset: a.multiset,
    };
    let min = min_family_lcs(&space, budget)?;
    let family: Vec<String> = min.family.iter().map(|w| w.to_text()).collect();
    emit_csv(a.output.csv.csv.as_deref(), &["n", "k", "t", "min"], &[vec![a.n.to_string(), a.k.to_string(), a.t.to_string(), min.value.to_string()]])?;
    let report = json!({
        "version": VERSION,
        "command": "scan",
        "params": { "mode": universe, "n": a.n, "k": a.k, "t": a.t, "multiset": a.multiset, "budget": budget.to_string() },
        "min": min.value,
        "family": family,
        "cost": min.cost.to_string(),
    });
    emit(&report, a.output.out.as_deref(), out)
}

fn gamma(a: GammaArgs, out: &mut dyn Write) -> CliResult<()> {
    let est = estimate_gamma(a.k, a.n, a.samples, a.seed)?;
    let rows: Vec<Vec<String>> = est
        .lengths
        .iter()
        .enumerate()
        .map(|(i, l)| vec![i.to_string(), l.to_string()])
        .collect();
    emit_csv(a.output.csv.csv.as_deref(), &["sample", "lcs"], &rows)?;
    let report = json!({
        "version": VERSION,
        "command": "gamma",
        "params": { "k": a.k, "n": a.n, "samples": a.samples, "seed": a.seed, "generator": "chacha8, stream per sample" },
        "mean_lcs": est.mean_lcs,
        "mean_ratio": est.mean_ratio,
        "std_dev": est.std_dev,
        "ci95": [est.ci95.0, est.ci95.1],
        "gamma_sqrtk": est.gamma_sqrtk,
        "sqrt_n": (a.n as f64).sqrt(),
        "limit_of_gamma_sqrtk": 2.0,
    });
    emit(&report, a.output.out.as_deref(), out)
}
