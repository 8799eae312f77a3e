//! Round-trip a generated problem through the JSON problem format, solve the
//! reparsed copy, and emit the result file and CSV pivot trace.
//!
//! Run with: cargo run --example file_roundtrip

use facetlp::generators::gen_random_feasible;
use facetlp::io::{self, ParsedProblem};
use facetlp::solver::solve_standard;
use facetlp::SolveOptions;

fn main() {
    let problem = gen_random_feasible(3, 6, 42);
    let text = io::write_standard(&problem);
    println!("--- problem file ---\n{text}");

    let ParsedProblem::Standard(reparsed) = io::parse_problem(&text).unwrap() else {
        unreachable!("written file is standard form");
    };
    let outcome = solve_standard(&reparsed, &SolveOptions::default()).unwrap();

    let dir = std::env::temp_dir().join("facetlp_roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let result_path = dir.join(format!("{}.result.json", problem.name));
    let trace_path = dir.join(format!("{}.trace.csv", problem.name));
    std::fs::write(&result_path, io::write_result(&outcome)).unwrap();
    std::fs::write(&trace_path, io::write_trace_csv(&outcome)).unwrap();

    println!("--- trace ---\n{}", io::write_trace_csv(&outcome));
    println!("result written to {}", result_path.display());
    println!("trace written to {}", trace_path.display());

    // The parsed result file agrees with the in-memory outcome.
    let parsed = io::parse_result(&std::fs::read_to_string(&result_path).unwrap()).unwrap();
    assert_eq!(parsed.iterations, outcome.iterations);
    assert_eq!(parsed.objective, outcome.objective);
    println!(
        "result file round-trips: {:?} in {} pivots",
        parsed.status, parsed.iterations
    );
}
