//! Build a small box-bounded problem by hand, solve it, and walk through
//! the recorded pivot trace and the audited result.
//!
//! Run with: cargo run --example solve_trace

use facetlp::canonical::map_solution_back;
use facetlp::solver::solve_standard;
use facetlp::{DenseMatrix, SolveOptions, StandardLp};

fn main() {
    // min -x1 - 2 x2  s.t.  -x1 - x2 >= -3,  -x2 >= -2,  x in [0, 4]^2
    let problem = StandardLp {
        name: "walkthrough".into(),
        c_bar: vec![-1.0, -2.0],
        a_bar: DenseMatrix::from_rows(&[&[-1.0, -1.0], &[0.0, -1.0]]).unwrap(),
        b_bar: vec![-3.0, -2.0],
        lower: vec![0.0, 0.0],
        upper: vec![4.0, 4.0],
        metadata: None,
    };

    let outcome = solve_standard(&problem, &SolveOptions::default()).unwrap();
    println!("status: {:?}", outcome.status);
    println!(
        "iterations: {} (bound {})",
        outcome.iterations, outcome.bound
    );

    for rec in &outcome.pivots {
        println!(
            "pivot {}: row {} enters (violation {:.3}), row {} leaves, \
             ratio {:.3}, objective {:.3} -> {:.3}{}",
            rec.iteration,
            rec.entering + 1,
            rec.sigma_p,
            rec.leaving + 1,
            rec.ratio,
            rec.objective_before,
            rec.objective_after,
            match rec.redundancy_removed {
                Some(row) => format!(", row {} detected redundant", row + 1),
                None => String::new(),
            }
        );
    }

    let x = outcome.x_opt.as_ref().unwrap();
    let solution = map_solution_back(&problem, x);
    println!("x = {:?}, objective = {}", solution.x, solution.objective);
    println!("constraint slacks: {:?}", solution.constraint_slacks);

    for (name, check) in outcome.audit.checks() {
        match &check.detail {
            Some(d) => println!("audit {name}: pass={} ({d})", check.pass),
            None => println!("audit {name}: pass={}", check.pass),
        }
    }
}
