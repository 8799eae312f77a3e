//! Brute-force ground truth for desk-scale instances: enumerate every d-row
//! base, keep the feasible basic solutions, and report the exact optimum.
//!
//! Shares only the linear algebra with the solver so the check stays
//! independent of the pivot logic.

use thiserror::Error;

use crate::canonical::CanonicalLp;
use crate::linalg::{self, dot};

const SIZE_GUARD: u128 = 10_000_000;

#[derive(Debug, Error)]
#[error("combinatorial guard tripped: C({n}, {d}) = {combinations} exceeds {SIZE_GUARD}")]
pub struct SizeGuardError {
    pub n: usize,
    pub d: usize,
    pub combinations: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome {
    Optimal { x: Vec<f64>, objective: f64 },
    Infeasible,
}

fn binomial(n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    let d = d.min(n - d);
    let mut acc: u128 = 1;
    for i in 0..d {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > SIZE_GUARD {
            return acc;
        }
    }
    acc
}

fn check_guard(n: usize, d: usize) -> Result<(), SizeGuardError> {
    let combinations = binomial(n, d);
    if combinations > SIZE_GUARD {
        Err(SizeGuardError { n, d, combinations })
    } else {
        Ok(())
    }
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Enumerate basic solutions over the given active rows.
///
/// `active` lists the 0-based row indices to consider; feasibility is
/// checked against those rows only.
pub fn enumerate_solve_rows(
    p: &CanonicalLp,
    objective: &[f64],
    active: &[usize],
    tol: f64,
) -> Result<OracleOutcome, SizeGuardError> {
    let d = p.dim();
    check_guard(active.len(), d)?;
    let mut best: Option<(Vec<f64>, f64)> = None;

    // Fixed-size combination walk over positions into `active`.
    let mut subset: Vec<usize> = (0..d).collect();
    if active.len() < d {
        return Ok(OracleOutcome::Infeasible);
    }
    loop {
        let rows: Vec<usize> = subset.iter().map(|&i| active[i]).collect();
        if let Ok(f) = linalg::factorize(&p.a.select_rows(&rows), 1e-12) {
            let b_rows: Vec<f64> = rows.iter().map(|&i| p.b[i]).collect();
            let x = linalg::solve_columns(&f, &b_rows);
            let feasible = active.iter().all(|&i| dot(p.a.row(i), &x) >= p.b[i] - tol);
            if feasible {
                let obj = dot(objective, &x);
                let better = match &best {
                    None => true,
                    Some((bx, bobj)) => {
                        obj < bobj - tol || ((obj - bobj).abs() <= tol && lex_less(&x, bx))
                    }
                };
                if better {
                    best = Some((x, obj));
                }
            }
        }
        // Advance to the next d-combination in lexicographic order.
        let mut i = d;
        loop {
            if i == 0 {
                match best {
                    Some((x, objective)) => return Ok(OracleOutcome::Optimal { x, objective }),
                    None => return Ok(OracleOutcome::Infeasible),
                }
            }
            i -= 1;
            if subset[i] != i + active.len() - d {
                subset[i] += 1;
                for j in i + 1..d {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exact optimum of the canonical problem by exhaustive base enumeration.
pub fn enumerate_solve(p: &CanonicalLp, tol: f64) -> Result<OracleOutcome, SizeGuardError> {
    let all: Vec<usize> = (0..p.num_rows()).collect();
    enumerate_solve_rows(p, &p.c, &all, tol)
}

/// A row is redundant when minimizing it over the remaining constraints still
/// satisfies it.
pub fn verify_redundant(p: &CanonicalLp, row: usize, tol: f64) -> Result<bool, SizeGuardError> {
    let remaining: Vec<usize> = (0..p.num_rows()).filter(|&i| i != row).collect();
    let objective: Vec<f64> = p.a.row(row).to_vec();
    match enumerate_solve_rows(p, &objective, &remaining, tol)? {
        OracleOutcome::Optimal {
            objective: min_val, ..
        } => Ok(min_val >= p.b[row] - tol),
        // Empty remaining set means the row can't cut anything.
        OracleOutcome::Infeasible => Ok(true),
    }
}
