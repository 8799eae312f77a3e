//! Solve the deformed-cube family that forces classical vertex pivot rules
//! into exponentially many steps, and show the facet pivot iteration counts
//! staying under the n - d cap.
//!
//! Run with: cargo run --example klee_minty

use facetlp::generators::gen_klee_minty;
use facetlp::solver::solve_standard;
use facetlp::SolveOptions;

fn main() {
    let opts = SolveOptions::default();
    println!(
        "{:>4} {:>6} {:>6} {:>12} {:>12}",
        "dim", "iters", "bound", "objective", "2^dim - 1"
    );
    for dim in 2..=10 {
        let problem = gen_klee_minty(dim, 1.0 / 3.0).unwrap();
        let outcome = solve_standard(&problem, &opts).unwrap();
        println!(
            "{:>4} {:>6} {:>6} {:>12.6} {:>12}",
            dim,
            outcome.iterations,
            outcome.bound,
            outcome.objective.unwrap(),
            (1u64 << dim) - 1
        );
        assert!(outcome.iterations <= outcome.bound);
    }
}
