use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use relhom::nu::loop_subset_check;
use relhom::pair::letter_name;
use relhom::suites::{self, SuiteOutcome};
use relhom::{NuEvaluator, PairComplex, Report};
use serde_json::{json, Value};

mod letters;

use letters::compact_words;

const DEFAULT_SEED: u64 = 20_240_607;

/// Exact verification and evaluation of the shuffle-subdivision map into
/// relative homology of wedges of circles.
#[derive(Debug, Parser)]
#[command(name = "relhom", version)]
struct Cli {
    /// Emit the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Write the output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Report 0 ms so that repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one of the verification suites.
    #[command(subcommand)]
    Verify(Suite),
    /// Relative homology of the product pair for a wedge of circles.
    Homology(HomologyArgs),
    /// Homology coordinates of the image of a word.
    Nu(NuArgs),
    /// Dump bases and boundary matrices of the relative complex as JSON.
    ExportComplex(ModelArgs),
}

#[derive(Debug, Subcommand)]
enum Suite {
    /// Subdivision commutes with the boundary.
    Subdivision(Bounds<4, 4>),
    /// The constructed homotopy satisfies its defining identity.
    Homotopy(Bounds<3, 3>),
    /// Permutation, shuffle, enumeration, involution and bijection checks.
    Combinatorics(Bounds<4, 3>),
    /// The alternating subdivided sum cancels symbolically.
    Cancellation(MaxN<3>),
    /// The alternating sum over loop subsets vanishes in homology.
    #[command(name = "theorem-b")]
    LoopSubsets(LoopSubsetArgs),
    /// Naturality under maps between wedges.
    Naturality(NaturalityArgs),
    /// Pointwise comparison of the shuffle decomposition at random points.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
struct Bounds<const N: usize, const K: usize> {
    #[arg(long, default_value_t = N)]
    max_n: usize,
    #[arg(long, default_value_t = K)]
    max_k: usize,
}

#[derive(Debug, Args)]
struct MaxN<const N: usize> {
    #[arg(long, default_value_t = N)]
    max_n: usize,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Number of circles in the wedge.
    #[arg(long, default_value_t = 1)]
    genus: usize,
    /// Number of factors.
    #[arg(long, default_value_t = 2)]
    n: usize,
}

#[derive(Debug, Args)]
struct HomologyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Homological degree; defaults to `n`.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Debug, Args)]
struct NuArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Word in the generators, e.g. `xx` or `aBa`.
    #[arg(long)]
    word: String,
}

#[derive(Debug, Args)]
struct LoopSubsetArgs {
    /// Comma-separated loops; with this flag a single case is checked.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<String>>,
    /// Base path for the single case.
    #[arg(long, default_value = "")]
    gamma: String,
    /// Rank of the wedge (single case: default 1; sweep: default 2).
    #[arg(long)]
    genus: Option<usize>,
    /// Degree for the single case; defaults to the number of loops minus one.
    #[arg(long)]
    n: Option<usize>,
    /// Largest degree in the sweep.
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    /// Longest base path in the sweep.
    #[arg(long, default_value_t = 2)]
    max_len: usize,
}

#[derive(Debug, Args)]
struct NaturalityArgs {
    #[arg(long, default_value_t = 2)]
    genus: usize,
    #[arg(long, default_value_t = 2)]
    max_len: usize,
    #[arg(long, default_value_t = 2)]
    max_n: usize,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 2)]
    genus: usize,
    #[arg(long, default_value_t = 3)]
    max_len: usize,
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    /// Random points per word and degree.
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Check only this word (in degree `--n`).
    #[arg(long, requires = "n")]
    word: Option<String>,
    #[arg(long)]
    n: Option<usize>,
}

/// A failure that prevents a report from being produced.
#[derive(Debug)]
enum Failure {
    /// Bad user input; exit code 2.
    Input(String),
    /// The library rejected the request; exit code 1.
    Library(relhom::Error),
}

impl From<relhom::Error> for Failure {
    fn from(e: relhom::Error) -> Self {
        Failure::Library(e)
    }
}

type Params = BTreeMap<String, Value>;

fn params<const L: usize>(pairs: [(&str, Value); L]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn big_to_value(x: &num_bigint::BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

fn suite_report(name: &str, p: Params, o: relhom::Result<SuiteOutcome>) -> Result<Report, Failure> {
    Ok(Report::from_outcome(format!("verify {name}"), p, o?))
}

fn verify(suite: Suite) -> Result<Report, Failure> {
    match suite {
        Suite::Subdivision(b) => suite_report(
            "subdivision",
            params([("max_n", b.max_n.into()), ("max_k", b.max_k.into())]),
            suites::subdivision_suite(b.max_n, b.max_k),
        ),
        Suite::Homotopy(b) => suite_report(
            "homotopy",
            params([("max_n", b.max_n.into()), ("max_k", b.max_k.into())]),
            suites::homotopy_suite(b.max_n, b.max_k),
        ),
        Suite::Combinatorics(b) => suite_report(
            "combinatorics",
            params([("max_n", b.max_n.into()), ("max_k", b.max_k.into())]),
            suites::combinatorics_suite(b.max_n, b.max_k),
        ),
        Suite::Cancellation(b) => suite_report(
            "cancellation",
            params([("max_n", b.max_n.into())]),
            suites::cancellation_suite(b.max_n),
        ),
        Suite::LoopSubsets(a) => loop_subsets(a),
        Suite::Naturality(a) => suite_report(
            "naturality",
            params([
                ("genus", a.genus.into()),
                ("max_len", a.max_len.into()),
                ("max_n", a.max_n.into()),
            ]),
            suites::naturality_suite(a.genus, a.max_len, a.max_n),
        ),
        Suite::Oracle(a) => oracle(a),
    }
}

fn loop_subsets(a: LoopSubsetArgs) -> Result<Report, Failure> {
    let Some(alphas) = a.alphas else {
        let genus = a.genus.unwrap_or(2);
        return suite_report(
            "theorem-b",
            params([
                ("genus", genus.into()),
                ("max_len", a.max_len.into()),
                ("max_n", a.max_n.into()),
            ]),
            suites::loop_subset_sweep(genus, a.max_n, a.max_len),
        );
    };
    if alphas.is_empty() {
        return Err(Failure::Input("--alphas needs at least one loop".into()));
    }
    let genus = a.genus.unwrap_or(1);
    let n = a.n.unwrap_or(alphas.len() - 1);
    if n == 0 {
        return Err(Failure::Input("degree must be at least 1".into()));
    }
    if alphas.len() != n + 1 {
        return Err(Failure::Input(format!(
            "degree {n} needs {} loops, got {}",
            n + 1,
            alphas.len()
        )));
    }
    let mut texts = vec![a.gamma.as_str()];
    texts.extend(alphas.iter().map(String::as_str));
    let (words, letters) = compact_words(&texts, genus).map_err(Failure::Input)?;
    let (gamma, loops) = words.split_first().expect("gamma is present");
    let eval = NuEvaluator::new(n, genus)?;
    let res = loop_subset_check(&eval, gamma, loops)?;
    let mut outcome = SuiteOutcome::default();
    outcome.check(res.vanishes(), || {
        format!("alternating sum is {:?}", res.total.free)
    });
    let p = params([
        ("alphas", json!(alphas)),
        ("gamma", json!(a.gamma)),
        ("genus", genus.into()),
        ("letters", letters),
        ("n", n.into()),
    ]);
    let mut report = Report::from_outcome("verify theorem-b", p, outcome);
    let terms: Vec<Value> = res
        .terms
        .iter()
        .map(|(subset, class)| {
            json!({
                "subset": subset,
                "coordinates": class.free.iter().map(big_to_value).collect::<Vec<_>>(),
            })
        })
        .collect();
    report.result = Some(json!({
        "total": res.total.free.iter().map(big_to_value).collect::<Vec<_>>(),
        "terms": terms,
    }));
    Ok(report)
}

fn oracle(a: OracleArgs) -> Result<Report, Failure> {
    let Some(word) = a.word else {
        return suite_report(
            "oracle",
            params([
                ("genus", a.genus.into()),
                ("max_len", a.max_len.into()),
                ("max_n", a.max_n.into()),
                ("points", a.points.into()),
                ("seed", a.seed.into()),
            ]),
            suites::oracle_suite(a.genus, a.max_len, a.max_n, a.points, a.seed),
        );
    };
    let n = a.n.expect("clap enforces --n with --word");
    let (words, letters) = compact_words(&[word.as_str()], a.genus).map_err(Failure::Input)?;
    if !words[0].is_positive() || words[0].is_empty() {
        return Err(Failure::Input(
            "the oracle needs a nonempty word without inverse letters".into(),
        ));
    }
    let outcome = suites::oracle_word_suite(&words[0], n, a.points, a.seed)?;
    let p = params([
        ("genus", a.genus.into()),
        ("letters", letters),
        ("n", n.into()),
        ("points", a.points.into()),
        ("seed", a.seed.into()),
        ("word", word.into()),
    ]);
    Ok(Report::from_outcome("verify oracle", p, outcome))
}

fn homology(a: HomologyArgs) -> Result<Report, Failure> {
    let ModelArgs { genus, n } = a.model;
    let degree = a.degree.unwrap_or(n);
    let complex = PairComplex::build(n, genus, degree + 1)?;
    let h = complex.homology(degree)?;
    let mut report = Report::new(
        "homology",
        params([
            ("degree", degree.into()),
            ("genus", genus.into()),
            ("n", n.into()),
        ]),
    );
    report.cases = 1;
    let basis: Vec<String> = complex.basis(degree)?.iter().map(ToString::to_string).collect();
    report.result = Some(json!({
        "basis": basis,
        "chain_rank": h.chain_rank(),
        "free_rank": h.free_rank(),
        "torsion": h.torsion().iter().map(big_to_value).collect::<Vec<_>>(),
    }));
    Ok(report)
}

fn nu(a: NuArgs) -> Result<Report, Failure> {
    let ModelArgs { genus, n } = a.model;
    let (words, letters) = compact_words(&[a.word.as_str()], genus).map_err(Failure::Input)?;
    let eval = NuEvaluator::new(n, genus)?;
    let class = eval.eval_word(&words[0])?;
    let mut report = Report::new(
        "nu",
        params([
            ("genus", genus.into()),
            ("letters", letters),
            ("n", n.into()),
            ("word", a.word.into()),
        ]),
    );
    report.cases = 1;
    let basis: Vec<String> = eval
        .complex()
        .basis(n)?
        .iter()
        .map(|s| s.render(letter_name))
        .collect();
    report.result = Some(json!({
        "basis": basis,
        "coordinates": class.free.iter().map(big_to_value).collect::<Vec<_>>(),
        "torsion": class.torsion.iter().map(big_to_value).collect::<Vec<_>>(),
        "free_rank": eval.homology().free_rank(),
    }));
    Ok(report)
}

fn export_complex(a: ModelArgs) -> Result<String, Failure> {
    let complex = PairComplex::for_top_degree(a.n, a.genus)?;
    let value = serde_json::to_value(complex.to_export()).expect("exports serialize");
    Ok(serde_json::to_string_pretty(&value).expect("values serialize"))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Verify(s) => verify(s).map(Some),
        Command::Homology(a) => homology(a).map(Some),
        Command::Nu(a) => nu(a).map(Some),
        Command::ExportComplex(a) => match export_complex(a) {
            Ok(text) => {
                return match emit(&cli.out, &text) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("error: {e}");
                        ExitCode::FAILURE
                    }
                };
            }
            Err(e) => Err(e),
        },
    };
    let mut report = match outcome {
        Ok(Some(r)) => r,
        Ok(None) => unreachable!(),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    if !cli.no_timing {
        report.ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    }
    let text = if cli.json {
        report.to_json()
    } else {
        report.to_text()
    };
    if let Err(e) = emit(&cli.out, &text) {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
