//! Solve a large generated suite and tally audit-check outcomes, printing
//! which structural guarantees hold empirically and which do not.
//!
//! Run with: cargo run --release --example audit_suite

use facetlp::generators::{gen_infeasible, gen_klee_minty, gen_random_feasible};
use facetlp::solver::{solve_standard, SolveOptions};

fn main() {
    let opts = SolveOptions::default();
    let mut instances = Vec::new();
    for seed in 1u64..=500 {
        let d = 2 + ((seed - 1) % 4) as usize;
        let m = 3 + ((seed - 1) % 10) as usize;
        instances.push(gen_random_feasible(d, m, seed));
    }
    for seed in 1u64..=100 {
        let d = 2 + ((seed - 1) % 4) as usize;
        let m = 3 + ((seed - 1) % 10) as usize;
        instances.push(gen_infeasible(d, m, seed).unwrap());
    }
    for dim in 2..=8 {
        instances.push(gen_klee_minty(dim, 1.0 / 3.0).unwrap());
    }

    let mut fail_counts = std::collections::BTreeMap::new();
    let mut worst_ratio = 0.0f64;
    let mut examples = std::collections::BTreeMap::new();
    for p in &instances {
        let out = solve_standard(p, &opts).unwrap();
        worst_ratio = worst_ratio.max(out.iterations as f64 / out.bound.max(1) as f64);
        for (name, check) in out.audit.checks() {
            if !check.pass {
                *fail_counts.entry(name).or_insert(0usize) += 1;
                examples.entry(name).or_insert_with(|| {
                    format!("{}: {}", p.name, check.detail.clone().unwrap_or_default())
                });
            }
        }
    }
    println!(
        "{} instances solved; worst iterations/bound ratio {:.3}",
        instances.len(),
        worst_ratio
    );
    if fail_counts.is_empty() {
        println!("all audit checks passed on every instance");
    }
    for (name, count) in &fail_counts {
        println!("check {name}: {count} failures; first: {}", examples[name]);
    }
}
