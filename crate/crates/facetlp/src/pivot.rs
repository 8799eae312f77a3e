//! One pivot step's decision logic: residuals, entering selection, base
//! expansion, infeasibility test, leaving selection, dual update, and
//! redundancy detection.

use thiserror::Error;

use crate::canonical::CanonicalLp;
use crate::linalg::{self, dot, Factorization};

/// Current base, its factorization, the basic solution and the dual
/// coefficients, all in positional order (entry j of `y_c` belongs to row
/// `base[j]`).
#[derive(Debug)]
pub struct BaseState {
    pub base: Vec<usize>,
    pub factorization: Factorization,
    pub x: Vec<f64>,
    pub y_c: Vec<f64>,
    pub iteration: usize,
}

/// Signed slacks `sigma_i = a_i . x - b_i` for every row.
#[derive(Debug, Clone)]
pub struct Residuals {
    pub sigma: Vec<f64>,
}

/// Entering row p expressed in the current base: `a_p = y_p^T A_B`.
#[derive(Debug, Clone)]
pub struct EnteringExpansion {
    pub p: usize,
    pub y_p: Vec<f64>,
}

#[derive(Debug, Error)]
pub enum PivotError {
    #[error("numerical breakdown: base matrix singular at iteration {iteration} (elimination step {step})")]
    NumericalBreakdown { iteration: usize, step: usize },
    #[error("dual feasibility violated at iteration {iteration}: y_c[{position}] = {value}")]
    DualViolation {
        iteration: usize,
        position: usize,
        value: f64,
    },
}

pub fn compute_residuals(p: &CanonicalLp, x: &[f64]) -> Residuals {
    assert_eq!(x.len(), p.dim());
    let sigma = (0..p.num_rows())
        .map(|i| dot(p.a.row(i), x) - p.b[i])
        .collect();
    Residuals { sigma }
}

/// Least-index entering rule over the violated non-base rows; `None` means
/// the current basic solution is feasible (hence optimal).
pub fn select_entering(r: &Residuals, nonbase_active: &[usize], feas_tol: f64) -> Option<usize> {
    nonbase_active
        .iter()
        .copied()
        .filter(|&i| r.sigma[i] < -feas_tol)
        .min()
}

pub fn expand_entering(state: &BaseState, p: usize, problem: &CanonicalLp) -> EnteringExpansion {
    debug_assert!(!state.base.contains(&p));
    let y_p = linalg::solve_rows(&state.factorization, problem.a.row(p));
    EnteringExpansion { p, y_p }
}

/// A violated entering row whose expansion has no positive coefficient
/// certifies infeasibility.
pub fn detect_infeasible(exp: &EnteringExpansion, pos_tol: f64) -> bool {
    exp.y_p.iter().all(|&v| v <= pos_tol)
}

/// Minimum-ratio leaving rule with least-row-index tie break.
///
/// Returns the base position of the leaving row and the ratio `y_cq / y_pq`.
pub fn select_leaving(
    state: &BaseState,
    exp: &EnteringExpansion,
    pos_tol: f64,
    ratio_tie_tol: f64,
) -> (usize, f64) {
    let mut min_ratio = f64::INFINITY;
    for (j, &ypj) in exp.y_p.iter().enumerate() {
        if ypj > pos_tol {
            min_ratio = min_ratio.min(state.y_c[j] / ypj);
        }
    }
    assert!(
        min_ratio.is_finite(),
        "select_leaving requires at least one positive expansion coefficient"
    );
    // Among positions within the tie band of the minimum, take the smallest
    // row index.
    let mut best: Option<(usize, f64)> = None;
    for (j, &ypj) in exp.y_p.iter().enumerate() {
        if ypj <= pos_tol {
            continue;
        }
        let ratio = state.y_c[j] / ypj;
        if ratio - min_ratio <= ratio_tie_tol * (1.0 + min_ratio.abs()) {
            match best {
                Some((bj, _)) if state.base[bj] <= state.base[j] => {}
                _ => best = Some((j, ratio)),
            }
        }
    }
    best.unwrap()
}

/// Express c in the new base: the entering row takes the leaving slot with
/// coefficient `ratio`, every surviving slot j becomes `y_cj - y_pj * ratio`.
pub fn update_dual(
    state: &BaseState,
    exp: &EnteringExpansion,
    q_position: usize,
    dual_tol: f64,
) -> Result<Vec<f64>, PivotError> {
    let ratio = state.y_c[q_position] / exp.y_p[q_position];
    let mut new_y_c = Vec::with_capacity(state.y_c.len());
    for (j, &ycj) in state.y_c.iter().enumerate() {
        let v = if j == q_position {
            ratio
        } else {
            ycj - exp.y_p[j] * ratio
        };
        if v < -dual_tol {
            return Err(PivotError::DualViolation {
                iteration: state.iteration,
                position: j,
                value: v,
            });
        }
        new_y_c.push(v);
    }
    Ok(new_y_c)
}

/// The leaving row is redundant when every other expansion coefficient is
/// non-positive: the entering row then dominates it over the feasible set.
pub fn detect_redundant(exp: &EnteringExpansion, q_position: usize, pos_tol: f64) -> bool {
    exp.y_p
        .iter()
        .enumerate()
        .all(|(j, &v)| j == q_position || v <= pos_tol)
}

/// Substitute the entering row at the leaving row's slot, refactorize, and
/// re-solve for the new basic solution.
pub fn apply_pivot(
    state: &BaseState,
    q_position: usize,
    p: usize,
    problem: &CanonicalLp,
    new_y_c: Vec<f64>,
    singular_tol: f64,
) -> Result<BaseState, PivotError> {
    let mut base = state.base.clone();
    base[q_position] = p;
    let a_base = problem.a.select_rows(&base);
    let factorization =
        linalg::factorize(&a_base, singular_tol).map_err(|e| PivotError::NumericalBreakdown {
            iteration: state.iteration + 1,
            step: e.step,
        })?;
    let b_base: Vec<f64> = base.iter().map(|&i| problem.b[i]).collect();
    let x = linalg::solve_columns(&factorization, &b_base);
    Ok(BaseState {
        base,
        factorization,
        x,
        y_c: new_y_c,
        iteration: state.iteration + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{to_canonical, StandardLp};
    use crate::linalg::{factorize, solve_columns, DenseMatrix};

    const POS_TOL: f64 = 1e-11;

    fn e2() -> (CanonicalLp, crate::canonical::InitialCertificate) {
        // min x s.t. x >= 2, bounds [0, 5]
        let p = StandardLp {
            name: "e2".into(),
            c_bar: vec![1.0],
            a_bar: DenseMatrix::from_rows(&[&[1.0]]).unwrap(),
            b_bar: vec![2.0],
            lower: vec![0.0],
            upper: vec![5.0],
            metadata: None,
        };
        to_canonical(&p).unwrap()
    }

    fn e3() -> (CanonicalLp, crate::canonical::InitialCertificate) {
        let p = StandardLp {
            name: "e3".into(),
            c_bar: vec![-1.0, -1.0],
            a_bar: DenseMatrix::from_rows(&[&[-1.0, -1.0]]).unwrap(),
            b_bar: vec![-1.0],
            lower: vec![0.0, 0.0],
            upper: vec![1.0, 1.0],
            metadata: None,
        };
        to_canonical(&p).unwrap()
    }

    fn initial_state(p: &CanonicalLp, cert: &crate::canonical::InitialCertificate) -> BaseState {
        let f = factorize(&p.a.select_rows(&cert.base), 1e-12).unwrap();
        let b_base: Vec<f64> = cert.base.iter().map(|&i| p.b[i]).collect();
        let x = solve_columns(&f, &b_base);
        BaseState {
            base: cert.base.clone(),
            factorization: f,
            x,
            y_c: cert.y0.clone(),
            iteration: 0,
        }
    }

    #[test]
    fn residuals_e2_at_origin() {
        let (p, _) = e2();
        let r = compute_residuals(&p, &[0.0]);
        assert_eq!(r.sigma, vec![-2.0, 0.0, 5.0]);
    }

    #[test]
    fn residuals_identity_rows() {
        let p = CanonicalLp {
            name: "id".into(),
            c: vec![0.0, 0.0],
            a: DenseMatrix::identity(2),
            b: vec![0.0, 0.0],
            row_origin: vec![
                crate::canonical::RowOrigin::General(0),
                crate::canonical::RowOrigin::General(1),
            ],
        };
        let r = compute_residuals(&p, &[3.5, -2.0]);
        assert_eq!(r.sigma, vec![3.5, -2.0]);
    }

    #[test]
    fn residuals_e3_at_initial_point() {
        let (p, _) = e3();
        let r = compute_residuals(&p, &[1.0, 1.0]);
        assert_eq!(r.sigma, vec![-1.0, 1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn entering_picks_only_violated() {
        let r = Residuals {
            sigma: vec![-2.0, 0.0, 5.0],
        };
        assert_eq!(select_entering(&r, &[0, 2], 1e-9), Some(0));
    }

    #[test]
    fn entering_none_when_feasible() {
        let r = Residuals {
            sigma: vec![0.0, 1.0, 2.0],
        };
        assert_eq!(select_entering(&r, &[0, 1, 2], 1e-9), None);
    }

    #[test]
    fn entering_is_least_index_not_most_negative() {
        let r = Residuals {
            sigma: vec![-1.0, -3.0, 0.0],
        };
        assert_eq!(select_entering(&r, &[0, 1], 1e-9), Some(0));
    }

    #[test]
    fn expand_e2_over_lower_bound_base() {
        let (p, cert) = e2();
        let state = initial_state(&p, &cert);
        let exp = expand_entering(&state, 0, &p);
        assert_eq!(exp.y_p, vec![1.0]);
    }

    #[test]
    fn expand_identity_base() {
        let p = CanonicalLp {
            name: "id".into(),
            c: vec![0.0, 0.0],
            a: DenseMatrix::from_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 0.0]]).unwrap(),
            b: vec![0.0; 3],
            row_origin: vec![crate::canonical::RowOrigin::General(0); 3],
        };
        let f = factorize(&p.a.select_rows(&[0, 1]), 1e-12).unwrap();
        let state = BaseState {
            base: vec![0, 1],
            factorization: f,
            x: vec![0.0, 0.0],
            y_c: vec![0.0, 0.0],
            iteration: 0,
        };
        let exp = expand_entering(&state, 2, &p);
        assert_eq!(exp.y_p, vec![1.0, 0.0]);
    }

    #[test]
    fn expand_e3_over_upper_bound_base() {
        let (p, cert) = e3();
        let state = initial_state(&p, &cert);
        let exp = expand_entering(&state, 0, &p);
        assert_eq!(exp.y_p, vec![1.0, 1.0]);
    }

    #[test]
    fn infeasible_detection() {
        assert!(detect_infeasible(
            &EnteringExpansion {
                p: 0,
                y_p: vec![-1.0, 0.0]
            },
            POS_TOL
        ));
        assert!(!detect_infeasible(
            &EnteringExpansion {
                p: 0,
                y_p: vec![1.0, 1.0]
            },
            POS_TOL
        ));
    }

    #[test]
    fn leaving_single_row() {
        let (p, cert) = e2();
        let state = initial_state(&p, &cert);
        let exp = EnteringExpansion {
            p: 0,
            y_p: vec![1.0],
        };
        let (q_pos, ratio) = select_leaving(&state, &exp, POS_TOL, 1e-9);
        assert_eq!((q_pos, ratio), (0, 1.0));
    }

    #[test]
    fn leaving_tie_breaks_to_least_row_index() {
        let (p, cert) = e3();
        let state = initial_state(&p, &cert);
        let exp = EnteringExpansion {
            p: 0,
            y_p: vec![1.0, 1.0],
        };
        let (q_pos, ratio) = select_leaving(&state, &exp, POS_TOL, 1e-9);
        assert_eq!(state.base[q_pos], 3); // row 4 in 1-based terms
        assert_eq!(ratio, 1.0);
    }

    #[test]
    fn leaving_minimizes_ratio() {
        let (p, cert) = e3();
        let mut state = initial_state(&p, &cert);
        state.base = vec![1, 6]; // row indices only matter for tie-breaks
        state.y_c = vec![3.0, 1.0];
        let exp = EnteringExpansion {
            p: 0,
            y_p: vec![1.0, 2.0],
        };
        let (q_pos, ratio) = select_leaving(&state, &exp, POS_TOL, 1e-9);
        assert_eq!(q_pos, 1);
        assert_eq!(ratio, 0.5);
    }

    #[test]
    fn dual_update_e3() {
        let (p, cert) = e3();
        let state = initial_state(&p, &cert);
        let exp = EnteringExpansion {
            p: 0,
            y_p: vec![1.0, 1.0],
        };
        let new_y_c = update_dual(&state, &exp, 0, 1e-9).unwrap();
        assert_eq!(new_y_c, vec![1.0, 0.0]);
    }

    #[test]
    fn dual_update_degenerate_zero_ratio() {
        let (p, cert) = e3();
        let mut state = initial_state(&p, &cert);
        state.y_c = vec![0.0, 0.7];
        let exp = EnteringExpansion {
            p: 0,
            y_p: vec![1.0, -1.0],
        };
        let new_y_c = update_dual(&state, &exp, 0, 1e-9).unwrap();
        assert_eq!(new_y_c, vec![0.0, 0.7]);
    }

    #[test]
    fn dual_violation_is_reported() {
        let (p, cert) = e3();
        let mut state = initial_state(&p, &cert);
        state.y_c = vec![1.0, 0.1];
        // Deliberately bad expansion: not produced by select_leaving.
        let exp = EnteringExpansion {
            p: 0,
            y_p: vec![1.0, 5.0],
        };
        assert!(matches!(
            update_dual(&state, &exp, 0, 1e-9),
            Err(PivotError::DualViolation { .. })
        ));
    }

    #[test]
    fn redundancy_detection() {
        assert!(detect_redundant(
            &EnteringExpansion {
                p: 0,
                y_p: vec![1.0]
            },
            0,
            POS_TOL
        ));
        assert!(!detect_redundant(
            &EnteringExpansion {
                p: 0,
                y_p: vec![1.0, 1.0]
            },
            0,
            POS_TOL
        ));
        assert!(detect_redundant(
            &EnteringExpansion {
                p: 0,
                y_p: vec![2.0, -1.0, -3.0]
            },
            0,
            POS_TOL
        ));
    }

    #[test]
    fn apply_pivot_e2() {
        let (p, cert) = e2();
        let state = initial_state(&p, &cert);
        let next = apply_pivot(&state, 0, 0, &p, vec![1.0], 1e-12).unwrap();
        assert_eq!(next.base, vec![0]);
        assert_eq!(next.x, vec![2.0]);
        assert_eq!(next.iteration, 1);
    }

    #[test]
    fn apply_pivot_e3() {
        let (p, cert) = e3();
        let state = initial_state(&p, &cert);
        let next = apply_pivot(&state, 0, 0, &p, vec![1.0, 0.0], 1e-12).unwrap();
        assert_eq!(next.base, vec![0, 4]);
        assert!((next.x[0] - 0.0).abs() < 1e-14);
        assert!((next.x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn expansion_recombines_to_entering_row() {
        let (p, cert) = e3();
        let state = initial_state(&p, &cert);
        let exp = expand_entering(&state, 0, &p);
        let mut rebuilt = vec![0.0; p.dim()];
        for (j, &row) in state.base.iter().enumerate() {
            for (k, v) in rebuilt.iter_mut().enumerate() {
                *v += exp.y_p[j] * p.a.get(row, k);
            }
        }
        for (a, b) in rebuilt.iter().zip(p.a.row(0)) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
