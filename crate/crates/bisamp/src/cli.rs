//! Command-line harness: single runs, benchmark suites, and bound sweeps.
//!
//! Everything is deterministic; repeated invocations with identical flags
//! produce byte-identical output files.
//!
//! Exit codes: 0 success, 1 bound violation (from `verify-bounds`), 2 usage
//! error, 3 evaluation or output failure.

use crate::analytics::{
    self, bound_lipschitz, bound_power, bound_smooth, oracle_min, regret_with_bound, OracleResult,
    TheoreticalBound, DEFAULT_ORACLE_GRID,
};
use crate::baseline::ps_run;
use crate::corpus::{builtin_corpus, find, TestFunction};
use crate::csv::{write_bench_csv, write_trace_csv, BenchRow};
use crate::error::Error;
use crate::regularity::{DistanceSpec, RegularityCondition};
use crate::sampler::BinarySampler;
use crate::trace::{QueryTrace, StoppingRule};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EVALUATION: i32 = 3;

#[derive(Parser)]
#[command(
    name = "bisamp",
    version,
    about = "Univariate global optimization benchmark harness"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one optimization and emit its trace as CSV
    Optimize(OptimizeArgs),
    /// Run a benchmark suite and emit a summary CSV
    Bench(BenchArgs),
    /// Check the general regret bound against every closed form
    VerifyBounds(VerifyBoundsArgs),
    /// Inspect the built-in corpus
    Corpus(CorpusArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Binary,
    Ps,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Corpus function id
    #[arg(long = "fn")]
    function: String,
    /// Condition spec: abs:<C>, square:<C>, or power:<p>:<C>
    #[arg(long = "cond")]
    condition: String,
    /// Query budget T (at least 3)
    #[arg(long)]
    budget: usize,
    /// Stop early once the incumbent best is certified within epsilon
    #[arg(long)]
    epsilon: Option<f64>,
    /// Discard candidates that cannot beat the incumbent best
    #[arg(long)]
    prune: bool,
    #[arg(long, value_enum, default_value_t = Algorithm::Binary)]
    algorithm: Algorithm,
    /// Grid resolution of the ground-truth oracle
    #[arg(long, default_value_t = DEFAULT_ORACLE_GRID)]
    oracle_grid: usize,
    /// Skip the oracle; drops the regret columns from the CSV
    #[arg(long)]
    no_oracle: bool,
    /// Output file (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchAlgorithms {
    /// Binary sampling everywhere, the baseline wherever the condition is abs
    Auto,
    Binary,
    Ps,
    Both,
}

#[derive(Args)]
struct BenchArgs {
    /// Suite entry `FN:COND:T`, repeatable; a built-in suite runs if empty
    #[arg(long = "case")]
    cases: Vec<String>,
    #[arg(long, value_enum, default_value_t = BenchAlgorithms::Auto)]
    algorithms: BenchAlgorithms,
    #[arg(long, default_value_t = DEFAULT_ORACLE_GRID)]
    oracle_grid: usize,
    /// Output file (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyBoundsArgs {
    /// Largest horizon to sweep (from 3)
    #[arg(long = "t-max")]
    t_max: u64,
}

#[derive(Args)]
struct CorpusArgs {
    #[command(subcommand)]
    action: CorpusAction,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the built-in functions, domains, minima, and conditions
    List,
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(Cli::parse())
}

/// Parses the given argv and runs; usage errors exit with code 2.
pub fn run_from<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            EXIT_USAGE
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Optimize(args) => cmd_optimize(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::VerifyBounds(args) => cmd_verify_bounds(&args),
        Command::Corpus(args) => match args.action {
            CorpusAction::List => cmd_corpus_list(),
        },
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Evaluation { .. } => EXIT_EVALUATION,
        _ => EXIT_USAGE,
    }
}

fn resolve_function(id: &str) -> Result<TestFunction, i32> {
    let corpus = builtin_corpus();
    find(&corpus, id).ok_or_else(|| {
        eprintln!("unknown function '{id}'; run `bisamp corpus list`");
        EXIT_USAGE
    })
}

fn parse_condition(text: &str) -> Result<RegularityCondition, i32> {
    text.parse::<RegularityCondition>().map_err(|e| {
        eprintln!("{e}");
        EXIT_USAGE
    })
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, i32> {
    match path {
        Some(p) => match File::create(p) {
            Ok(f) => Ok(Box::new(BufWriter::new(f))),
            Err(e) => {
                eprintln!("cannot write '{}': {e}", p.display());
                Err(EXIT_EVALUATION)
            }
        },
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn execute(
    function: &TestFunction,
    cond: &RegularityCondition,
    algorithm: Algorithm,
    rule: &StoppingRule,
    prune: bool,
) -> Result<(QueryTrace, TheoreticalBound), i32> {
    let domain = function.domain();
    let normalized = cond.normalize(domain.0, domain.1).map_err(|e| {
        eprintln!("{e}");
        EXIT_USAGE
    })?;
    let objective = function.objective();

    match algorithm {
        Algorithm::Binary => {
            let trace = BinarySampler::run(move |x| objective(x), domain, cond, rule, prune)
                .map_err(|e| {
                    eprintln!("{e}");
                    exit_code_for(&e)
                })?;
            Ok((trace, TheoreticalBound::BinarySampling(normalized)))
        }
        Algorithm::Ps => {
            if !matches!(cond.distance(), DistanceSpec::Absolute) {
                eprintln!("piyavskii-shubert supports abs:<L> conditions only, got '{cond}'");
                return Err(EXIT_USAGE);
            }
            let t_max = match *rule {
                StoppingRule::MaxQueries(t) => t,
                _ => unreachable!("ps runs are budget-driven"),
            };
            let trace =
                ps_run(move |x| objective(x), domain, cond.constant(), t_max).map_err(|e| {
                    eprintln!("{e}");
                    exit_code_for(&e)
                })?;
            let lipschitz = normalized.constant();
            Ok((trace, TheoreticalBound::PiyavskiiShubert { lipschitz }))
        }
    }
}

fn oracle_for_case(
    function: &TestFunction,
    cond: &RegularityCondition,
    grid: usize,
) -> Result<OracleResult, i32> {
    let objective = function.objective();
    oracle_min(move |x| objective(x), function.domain(), cond, grid).map_err(|e| {
        eprintln!("{e}");
        exit_code_for(&e)
    })
}

fn cmd_optimize(args: &OptimizeArgs) -> i32 {
    let function = match resolve_function(&args.function) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let cond = match parse_condition(&args.condition) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let rule = match args.epsilon {
        Some(epsilon) => StoppingRule::Either {
            max_queries: args.budget,
            epsilon,
        },
        None => StoppingRule::MaxQueries(args.budget),
    };
    if let Err(e) = rule.validate() {
        eprintln!("{e}");
        return EXIT_USAGE;
    }
    if args.algorithm == Algorithm::Ps && (args.epsilon.is_some() || args.prune) {
        eprintln!("--epsilon and --prune apply to the binary sampler only");
        return EXIT_USAGE;
    }

    let (trace, bound) = match execute(&function, &cond, args.algorithm, &rule, args.prune) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let report = if args.no_oracle {
        None
    } else {
        match oracle_for_case(&function, &cond, args.oracle_grid) {
            Ok(oracle) => Some(regret_with_bound(&trace, &oracle, &bound)),
            Err(code) => return code,
        }
    };

    let mut out = match open_output(&args.output) {
        Ok(o) => o,
        Err(code) => return code,
    };
    if let Err(e) = write_trace_csv(&mut out, &trace, report.as_ref()) {
        eprintln!("write failed: {e}");
        return EXIT_EVALUATION;
    }
    EXIT_OK
}

struct BenchCase {
    function: TestFunction,
    cond: RegularityCondition,
    t: usize,
}

fn parse_case(text: &str) -> Result<BenchCase, i32> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() < 3 {
        eprintln!("case '{text}' is not of the form FN:COND:T");
        return Err(EXIT_USAGE);
    }
    let function = resolve_function(parts[0])?;
    let cond = parse_condition(&parts[1..parts.len() - 1].join(":"))?;
    let t: usize = parts[parts.len() - 1].parse().map_err(|_| {
        eprintln!(
            "case '{text}': cannot parse budget '{}'",
            parts[parts.len() - 1]
        );
        EXIT_USAGE
    })?;
    Ok(BenchCase { function, cond, t })
}

/// The shipped default suite: every corpus function under each of its
/// certified conditions at a 1000-query horizon.
fn default_suite() -> Vec<BenchCase> {
    builtin_corpus()
        .into_iter()
        .flat_map(|f| {
            f.conditions()
                .to_vec()
                .into_iter()
                .map(move |cert| BenchCase {
                    function: f.clone(),
                    cond: cert.condition,
                    t: 1000,
                })
        })
        .collect()
}

fn cmd_bench(args: &BenchArgs) -> i32 {
    let cases = if args.cases.is_empty() {
        default_suite()
    } else {
        let mut cases = Vec::new();
        for text in &args.cases {
            match parse_case(text) {
                Ok(c) => cases.push(c),
                Err(code) => return code,
            }
        }
        cases
    };

    let mut rows = Vec::new();
    for case in &cases {
        let is_abs = matches!(case.cond.distance(), DistanceSpec::Absolute);
        let want_ps = match args.algorithms {
            BenchAlgorithms::Auto => is_abs,
            BenchAlgorithms::Binary => false,
            BenchAlgorithms::Ps | BenchAlgorithms::Both => {
                if !is_abs {
                    eprintln!(
                        "piyavskii-shubert cannot run {} under '{}'; abs conditions only",
                        case.function.id(),
                        case.cond
                    );
                    return EXIT_USAGE;
                }
                true
            }
        };
        let want_binary = args.algorithms != BenchAlgorithms::Ps;

        let rule = StoppingRule::MaxQueries(case.t);
        if let Err(e) = rule.validate() {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
        let oracle = match oracle_for_case(&case.function, &case.cond, args.oracle_grid) {
            Ok(o) => o,
            Err(code) => return code,
        };
        let mut algorithms = Vec::new();
        if want_binary {
            algorithms.push(Algorithm::Binary);
        }
        if want_ps {
            algorithms.push(Algorithm::Ps);
        }
        for algorithm in algorithms {
            let (trace, bound) = match execute(&case.function, &case.cond, algorithm, &rule, false)
            {
                Ok(r) => r,
                Err(code) => return code,
            };
            let report = regret_with_bound(&trace, &oracle, &bound);
            let r_t = report.total();
            let bound_value = bound.at(case.t);
            let slack = case.t as f64 * oracle.error_bound;
            rows.push(BenchRow {
                function_id: case.function.id().to_string(),
                algorithm: match algorithm {
                    Algorithm::Binary => "binary".to_string(),
                    Algorithm::Ps => "ps".to_string(),
                },
                t: case.t,
                r_t,
                bound: bound_value,
                bound_name: report.bound_name.clone(),
                satisfied: r_t <= bound_value + slack,
            });
        }
    }

    let mut out = match open_output(&args.output) {
        Ok(o) => o,
        Err(code) => return code,
    };
    if let Err(e) = write_bench_csv(&mut out, &rows) {
        eprintln!("write failed: {e}");
        return EXIT_EVALUATION;
    }
    EXIT_OK
}

fn cmd_verify_bounds(args: &VerifyBoundsArgs) -> i32 {
    if args.t_max < 3 {
        eprintln!("--t-max must be at least 3, got {}", args.t_max);
        return EXIT_USAGE;
    }
    type ClosedForm = Box<dyn Fn(u64) -> f64>;
    let sweeps: Vec<(&str, RegularityCondition, ClosedForm)> = vec![
        (
            "abs:1",
            RegularityCondition::lipschitz(1.0).unwrap(),
            Box::new(|t| bound_lipschitz(1.0, t)),
        ),
        (
            "square:1",
            RegularityCondition::smooth(1.0).unwrap(),
            Box::new(|t| bound_smooth(1.0, t)),
        ),
        (
            "power:3:1",
            RegularityCondition::power(3.0, 1.0).unwrap(),
            Box::new(|t| bound_power(1.0, 3.0, t)),
        ),
    ];

    let mut violated = false;
    for (label, cond, closed_form) in &sweeps {
        let mut first_violation = None;
        for t in 3..=args.t_max {
            let general = analytics::bound_general(cond, t).expect("built-in distances");
            let closed = closed_form(t);
            if general > closed {
                first_violation = Some((t, general, closed));
                break;
            }
        }
        match first_violation {
            None => println!(
                "{label}: pass (general bound dominated for T = 3..{})",
                args.t_max
            ),
            Some((t, general, closed)) => {
                violated = true;
                println!("{label}: VIOLATION at T = {t}: general {general} > closed {closed}");
            }
        }
    }
    if violated {
        EXIT_BOUND_VIOLATION
    } else {
        EXIT_OK
    }
}

fn cmd_corpus_list() -> i32 {
    println!(
        "{:<4} {:<12} {:<24} conditions",
        "id", "domain", "known_min"
    );
    for f in builtin_corpus() {
        let (lo, hi) = f.domain();
        let min = match f.known_min() {
            Some((x, v)) => format!("f({x}) = {v}"),
            None => "(numeric only)".to_string(),
        };
        let conds: Vec<String> = f
            .conditions()
            .iter()
            .map(|c| format!("{} [{}]", c.condition, c.provenance))
            .collect();
        println!(
            "{:<4} [{lo}, {hi}]     {:<24} {}",
            f.id(),
            min,
            conds.join(", ")
        );
    }
    EXIT_OK
}
