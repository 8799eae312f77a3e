//! Generate contradictory instances and show the solver certifying them
//! infeasible, cross-checked against the enumeration oracle.
//!
//! Run with: cargo run --example infeasibility

use facetlp::canonical::to_canonical;
use facetlp::generators::gen_infeasible;
use facetlp::oracle::{enumerate_solve, OracleOutcome};
use facetlp::solver::solve_standard;
use facetlp::{SolveOptions, Status};

fn main() {
    let opts = SolveOptions::default();
    for seed in 1u64..=10 {
        let d = 2 + ((seed - 1) % 4) as usize;
        let m = 3 + ((seed - 1) % 10) as usize;
        let problem = gen_infeasible(d, m, seed).unwrap();
        let outcome = solve_standard(&problem, &opts).unwrap();
        let (canonical, _) = to_canonical(&problem).unwrap();
        let tol = opts.scaled_feas_tol(&canonical.b) * 10.0;
        let oracle = enumerate_solve(&canonical, tol).unwrap();
        println!(
            "{}: solver {:?} after {} pivots; oracle {:?}",
            problem.name, outcome.status, outcome.iterations, oracle
        );
        assert_eq!(outcome.status, Status::Infeasible);
        assert_eq!(oracle, OracleOutcome::Infeasible);
    }
}
