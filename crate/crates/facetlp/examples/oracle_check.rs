//! Cross-check the pivot solver against the brute-force base-enumeration
//! oracle on a batch of random feasible instances.
//!
//! Run with: cargo run --example oracle_check

use facetlp::canonical::to_canonical;
use facetlp::generators::gen_random_feasible;
use facetlp::oracle::{enumerate_solve, OracleOutcome};
use facetlp::solver::solve_standard;
use facetlp::SolveOptions;

fn main() {
    let opts = SolveOptions::default();
    let mut worst = 0.0f64;
    for seed in 1u64..=25 {
        let d = 2 + ((seed - 1) % 4) as usize;
        let m = 3 + ((seed - 1) % 10) as usize;
        let problem = gen_random_feasible(d, m, seed);
        let outcome = solve_standard(&problem, &opts).unwrap();
        let (canonical, _) = to_canonical(&problem).unwrap();
        let tol = opts.scaled_feas_tol(&canonical.b) * 10.0;
        let oracle = enumerate_solve(&canonical, tol).unwrap();
        let OracleOutcome::Optimal { objective, .. } = oracle else {
            panic!("{}: oracle reports infeasible", problem.name);
        };
        let got = outcome.objective.unwrap();
        let gap = (got - objective).abs() / (1.0 + objective.abs());
        worst = worst.max(gap);
        println!(
            "{}: solver {:.12} oracle {:.12} relative gap {:.3e}",
            problem.name, got, objective, gap
        );
        assert!(gap <= 1e-6);
    }
    println!("worst relative gap over 25 instances: {worst:.3e}");
}
