//! Command-line front end: solve, oracle, verify, gen, bench.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::canonical::{self, StandardLp};
use crate::generators;
use crate::io::{self, ParsedProblem};
use crate::oracle::{self, OracleOutcome};
use crate::solver::{self, SolveOptions, SolveOutcome, Status};

pub const EXIT_OPTIMAL: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_BREAKDOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "facetlp",
    about = "Facet-pivot simplex solver with trace auditing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and report status, objective, and iterations.
    Solve(SolveArgs),
    /// Brute-force solve by base enumeration (desk-scale only).
    Oracle(OracleArgs),
    /// Solve with both methods and compare.
    Verify(VerifyArgs),
    /// Generate an instance file.
    Gen(GenArgs),
    /// Batch solve + audit a generated suite.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    problem: PathBuf,
    #[arg(long = "tol-feas")]
    tol_feas: Option<f64>,
    #[arg(long = "tol-pos")]
    tol_pos: Option<f64>,
    #[arg(long = "tol-dual")]
    tol_dual: Option<f64>,
    #[arg(long = "max-iter-factor")]
    max_iter_factor: Option<usize>,
    /// Write the per-iteration trace table to this CSV path.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Print the audit report to standard output.
    #[arg(long)]
    audit: bool,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    problem: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    problem: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Klee-Minty style cube with known optimum -1.
    KleeMinty {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        eps: f64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Random feasible instance.
    Random {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Random instance with a contradictory row pair.
    Infeasible {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Random,
    KleeMinty,
    Infeasible,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 6)]
    m: usize,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Directory for counterexample bundles on failure.
    #[arg(long, default_value = "counterexamples")]
    counterexamples: PathBuf,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders --help/--version through the error path too.
            if e.use_stderr() {
                eprintln!("{e}");
                return EXIT_USAGE;
            }
            print!("{e}");
            return EXIT_OPTIMAL;
        }
    };
    match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn load_problem(path: &Path) -> Result<ParsedProblem, i32> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_USAGE
    })?;
    io::parse_problem(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn solve_parsed(parsed: &ParsedProblem, opts: &SolveOptions) -> Result<SolveOutcome, i32> {
    match parsed {
        ParsedProblem::Standard(p) => solver::solve_standard(p, opts).map_err(|e| {
            eprintln!("error: {e}");
            EXIT_USAGE
        }),
        ParsedProblem::Canonical(p, cert) => solver::solve_canonical(p, cert, opts).map_err(|e| {
            eprintln!("error: invalid certificate: {e}");
            EXIT_USAGE
        }),
    }
}

fn status_exit(status: Status) -> i32 {
    match status {
        Status::Optimal => EXIT_OPTIMAL,
        Status::Infeasible => EXIT_INFEASIBLE,
        Status::NumericalBreakdown | Status::IterationCapExceeded => EXIT_BREAKDOWN,
    }
}

fn cmd_solve(a: SolveArgs) -> i32 {
    let parsed = match load_problem(&a.problem) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let mut opts = SolveOptions::default();
    if let Some(v) = a.tol_feas {
        opts.feas_tol = v;
    }
    if let Some(v) = a.tol_pos {
        opts.pos_tol = v;
    }
    if let Some(v) = a.tol_dual {
        opts.dual_tol = v;
    }
    if let Some(v) = a.max_iter_factor {
        opts.max_iter_factor = v;
    }
    let outcome = match solve_parsed(&parsed, &opts) {
        Ok(o) => o,
        Err(code) => return code,
    };
    println!("status: {:?}", outcome.status);
    if let Some(obj) = outcome.objective {
        println!("objective: {obj}");
    }
    println!(
        "iterations: {} (bound n-d = {})",
        outcome.iterations, outcome.bound
    );
    if a.audit {
        for (name, check) in outcome.audit.checks() {
            let verdict = if check.pass { "pass" } else { "FAIL" };
            match &check.detail {
                Some(d) => println!("audit {name}: {verdict} ({d})"),
                None => println!("audit {name}: {verdict}"),
            }
        }
    }
    if let Some(path) = &a.trace {
        if let Err(e) = fs::write(path, io::write_trace_csv(&outcome)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if let Some(path) = &a.output {
        if let Err(e) = fs::write(path, io::write_result(&outcome)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    status_exit(outcome.status)
}

#[derive(Serialize)]
struct OracleResultFile {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    objective: Option<f64>,
}

fn oracle_on_parsed(parsed: &ParsedProblem, tol: f64) -> Result<OracleOutcome, String> {
    let canonical = match parsed {
        ParsedProblem::Standard(p) => canonical::to_canonical(p).map_err(|e| e.to_string())?.0,
        ParsedProblem::Canonical(p, _) => p.clone(),
    };
    oracle::enumerate_solve(&canonical, tol).map_err(|e| e.to_string())
}

fn cmd_oracle(a: OracleArgs) -> i32 {
    let parsed = match load_problem(&a.problem) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let tol = SolveOptions::default().feas_tol * 10.0;
    let out = match oracle_on_parsed(&parsed, tol) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let (file, code) = match out {
        OracleOutcome::Optimal { x, objective } => {
            println!("status: Optimal");
            println!("objective: {objective}");
            (
                OracleResultFile {
                    status: "Optimal",
                    x: Some(x),
                    objective: Some(objective),
                },
                EXIT_OPTIMAL,
            )
        }
        OracleOutcome::Infeasible => {
            println!("status: Infeasible");
            (
                OracleResultFile {
                    status: "Infeasible",
                    x: None,
                    objective: None,
                },
                EXIT_INFEASIBLE,
            )
        }
    };
    if let Some(path) = &a.output {
        let text = serde_json::to_string_pretty(&file).expect("oracle result serialization");
        if let Err(e) = fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    code
}

const ORACLE_AGREE_RTOL: f64 = 1e-6;

fn outcomes_agree(solve: &SolveOutcome, oracle: &OracleOutcome) -> bool {
    match (solve.status, oracle) {
        (Status::Optimal, OracleOutcome::Optimal { objective, .. }) => {
            let got = solve.objective.unwrap_or(f64::NAN);
            (got - objective).abs() <= ORACLE_AGREE_RTOL * (1.0 + objective.abs())
        }
        (Status::Infeasible, OracleOutcome::Infeasible) => true,
        _ => false,
    }
}

fn cmd_verify(a: VerifyArgs) -> i32 {
    let parsed = match load_problem(&a.problem) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let opts = SolveOptions::default();
    let outcome = match solve_parsed(&parsed, &opts) {
        Ok(o) => o,
        Err(code) => return code,
    };
    let oracle_out = match oracle_on_parsed(&parsed, opts.feas_tol * 10.0) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let agree = outcomes_agree(&outcome, &oracle_out);
    println!(
        "solver: {:?} {:?}; oracle: {}; {}",
        outcome.status,
        outcome.objective,
        match &oracle_out {
            OracleOutcome::Optimal { objective, .. } => format!("Optimal {objective}"),
            OracleOutcome::Infeasible => "Infeasible".to_string(),
        },
        if agree { "agree" } else { "DISAGREE" }
    );
    if agree {
        EXIT_OPTIMAL
    } else {
        EXIT_INFEASIBLE
    }
}

fn cmd_gen(a: GenArgs) -> i32 {
    let (problem, output) = match a.family {
        GenFamily::KleeMinty { dim, eps, output } => match generators::gen_klee_minty(dim, eps) {
            Ok(p) => (p, output),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        },
        GenFamily::Random { d, m, seed, output } => {
            if d == 0 {
                eprintln!("error: d must be at least 1");
                return EXIT_USAGE;
            }
            (generators::gen_random_feasible(d, m, seed), output)
        }
        GenFamily::Infeasible { d, m, seed, output } => {
            match generators::gen_infeasible(d, m, seed) {
                Ok(p) => (p, output),
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            }
        }
    };
    match fs::write(&output, io::write_standard(&problem)) {
        Ok(()) => EXIT_OPTIMAL,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", output.display());
            EXIT_USAGE
        }
    }
}

#[derive(Serialize)]
struct BenchInstanceReport {
    name: String,
    status: Status,
    iterations: usize,
    bound: usize,
    audit_pass: bool,
    oracle: &'static str,
}

#[derive(Serialize)]
struct BenchSummary {
    total: usize,
    optimal: usize,
    infeasible: usize,
    other: usize,
    max_iterations: usize,
    bound_violations: usize,
    audit_failures: usize,
    oracle_checked: usize,
    oracle_disagreements: usize,
}

#[derive(Serialize)]
struct BenchReport {
    suite: String,
    count: usize,
    seed: u64,
    d: usize,
    m: usize,
    instances: Vec<BenchInstanceReport>,
    summary: BenchSummary,
}

/// Batch runner shared by the `bench` subcommand and the acceptance suite.
/// Returns the report and whether everything passed.
pub fn run_bench(
    suite_name: &str,
    instances: Vec<StandardLp>,
    seed: u64,
    d: usize,
    m: usize,
    counterexample_dir: &Path,
) -> (BenchReportText, bool) {
    let opts = SolveOptions::default();
    let mut reports = Vec::with_capacity(instances.len());
    let mut summary = BenchSummary {
        total: instances.len(),
        optimal: 0,
        infeasible: 0,
        other: 0,
        max_iterations: 0,
        bound_violations: 0,
        audit_failures: 0,
        oracle_checked: 0,
        oracle_disagreements: 0,
    };
    let mut all_ok = true;
    for p in &instances {
        let outcome = solver::solve_standard(p, &opts).expect("generated instances are valid");
        match outcome.status {
            Status::Optimal => summary.optimal += 1,
            Status::Infeasible => summary.infeasible += 1,
            _ => summary.other += 1,
        }
        summary.max_iterations = summary.max_iterations.max(outcome.iterations);
        if outcome.iterations > outcome.bound {
            summary.bound_violations += 1;
        }
        let audit_pass = outcome.audit.all_pass();
        if !audit_pass {
            summary.audit_failures += 1;
        }
        let n = p.b_bar.len() + 2 * p.c_bar.len();
        let oracle_verdict = if n <= 26 && p.c_bar.len() <= 6 {
            match oracle_on_parsed(&ParsedProblem::Standard(p.clone()), opts.feas_tol * 10.0) {
                Ok(o) => {
                    summary.oracle_checked += 1;
                    if outcomes_agree(&outcome, &o) {
                        "agree"
                    } else {
                        summary.oracle_disagreements += 1;
                        "disagree"
                    }
                }
                Err(_) => "skipped",
            }
        } else {
            "skipped"
        };
        let instance_ok = audit_pass && oracle_verdict != "disagree";
        if !instance_ok {
            all_ok = false;
            write_counterexample(counterexample_dir, p, &outcome);
        }
        reports.push(BenchInstanceReport {
            name: p.name.clone(),
            status: outcome.status,
            iterations: outcome.iterations,
            bound: outcome.bound,
            audit_pass,
            oracle: oracle_verdict,
        });
    }
    let report = BenchReport {
        suite: suite_name.to_string(),
        count: instances.len(),
        seed,
        d,
        m,
        instances: reports,
        summary,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serialization");
    (BenchReportText(text), all_ok)
}

/// Rendered report body; byte-identical for identical inputs.
pub struct BenchReportText(pub String);

fn write_counterexample(dir: &Path, p: &StandardLp, outcome: &SolveOutcome) {
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let stem = dir.join(&p.name);
    let _ = fs::write(stem.with_extension("problem.json"), io::write_standard(p));
    let _ = fs::write(
        stem.with_extension("result.json"),
        io::write_result(outcome),
    );
    let _ = fs::write(
        stem.with_extension("trace.csv"),
        io::write_trace_csv(outcome),
    );
}

pub fn bench_instances(
    suite: &str,
    count: usize,
    seed: u64,
    d: usize,
    m: usize,
) -> Vec<StandardLp> {
    match suite {
        "random" => (0..count)
            .map(|i| generators::gen_random_feasible(d, m, seed + i as u64))
            .collect(),
        "infeasible" => (0..count)
            .map(|i| {
                generators::gen_infeasible(d, m.max(2), seed + i as u64)
                    .expect("m >= 2 enforced above")
            })
            .collect(),
        "klee-minty" => (0..count)
            .map(|i| generators::gen_klee_minty(2 + i % 7, 1.0 / 3.0).expect("dim in 2..=8"))
            .collect(),
        other => panic!("unknown suite {other}"),
    }
}

fn cmd_bench(a: BenchArgs) -> i32 {
    let suite_name = match a.suite {
        Suite::Random => "random",
        Suite::KleeMinty => "klee-minty",
        Suite::Infeasible => "infeasible",
    };
    let instances = bench_instances(suite_name, a.count, a.seed, a.d, a.m);
    let (report, all_ok) = run_bench(suite_name, instances, a.seed, a.d, a.m, &a.counterexamples);
    println!("{}", report.0);
    if let Some(path) = &a.report {
        if let Err(e) = fs::write(path, report.0.as_bytes()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if all_ok {
        EXIT_OPTIMAL
    } else {
        EXIT_INFEASIBLE
    }
}
