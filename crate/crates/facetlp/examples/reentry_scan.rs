//! Distinguish the two halves of the facet non-return claim on a large
//! suite: do leaving facets re-enter later bases, and does the iteration
//! count ever exceed n - d?
//!
//! Run with: cargo run --release --example reentry_scan

use facetlp::canonical::to_canonical;
use facetlp::generators::{gen_infeasible, gen_klee_minty, gen_random_feasible};
use facetlp::solver::{solve_standard, SolveOptions};

fn main() {
    let opts = SolveOptions::default();
    let mut insts = Vec::new();
    for seed in 1u64..=500 {
        let d = 2 + ((seed - 1) % 4) as usize;
        let m = 3 + ((seed - 1) % 10) as usize;
        insts.push(gen_random_feasible(d, m, seed));
    }
    for seed in 1u64..=100 {
        let d = 2 + ((seed - 1) % 4) as usize;
        let m = 3 + ((seed - 1) % 10) as usize;
        insts.push(gen_infeasible(d, m, seed).unwrap());
    }
    for dim in 2..=8 {
        insts.push(gen_klee_minty(dim, 1.0 / 3.0).unwrap());
    }
    // Harder sweep for the bound itself.
    for seed in 1000u64..=3000 {
        let d = 2 + ((seed - 1) % 7) as usize;
        let m = 3 + ((seed - 1) % 28) as usize;
        insts.push(gen_random_feasible(d, m, seed));
    }

    let mut total = 0usize;
    let mut slack_viol = 0usize;
    let mut reentry = 0usize;
    let mut bound_viol = 0usize;
    let mut worst_ratio = 0.0f64;
    for p in &insts {
        let out = solve_standard(p, &opts).unwrap();
        total += 1;
        let ratio = out.iterations as f64 / out.bound.max(1) as f64;
        if ratio > worst_ratio {
            worst_ratio = ratio;
        }
        if out.iterations > out.bound {
            bound_viol += 1;
            println!(
                "BOUND VIOLATION: {} ({} > {})",
                p.name, out.iterations, out.bound
            );
        }
        let mut inst_slack = false;
        let mut inst_re = false;
        let (c, _) = to_canonical(p).unwrap();
        for rec in &out.pivots {
            for s in out.states.iter().skip(rec.iteration + 1) {
                if s.base.contains(&rec.leaving) {
                    inst_re = true;
                }
                let slack: f64 = (0..c.dim())
                    .map(|j| c.a.get(rec.leaving, j) * s.x[j])
                    .sum::<f64>()
                    - c.b[rec.leaving];
                if slack < -1e-9 {
                    inst_slack = true;
                }
            }
        }
        if inst_slack {
            slack_viol += 1;
        }
        if inst_re {
            reentry += 1;
        }
    }
    println!(
        "total {total}; slack violations {slack_viol}; base re-entries {reentry}; \
         bound violations {bound_viol}; worst iterations/bound {worst_ratio:.3}"
    );
}
