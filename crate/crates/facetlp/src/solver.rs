//! Main facet-pivot loop, termination, trace recording, and the invariant
//! auditor that replays a recorded trace against the structural guarantees
//! the pivot rule is supposed to maintain.

use serde::{Deserialize, Serialize};

use crate::canonical::{CanonicalLp, CertificateError, InitialCertificate, StandardLp};
use crate::linalg::{self, dot};
use crate::pivot::{self, BaseState, PivotError};

/// Tolerances and limits for a solve. `feas_tol` is scaled internally by
/// `1 + max|b|`; the rest are used as given.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SolveOptions {
    pub feas_tol: f64,
    pub pos_tol: f64,
    pub ratio_tie_tol: f64,
    pub dual_tol: f64,
    pub singular_tol: f64,
    pub max_iter_factor: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            feas_tol: 1e-9,
            pos_tol: 1e-11,
            ratio_tie_tol: 1e-9,
            dual_tol: 1e-9,
            singular_tol: 1e-12,
            max_iter_factor: 4,
        }
    }
}

impl SolveOptions {
    pub fn scaled_feas_tol(&self, b: &[f64]) -> f64 {
        let b_max = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        self.feas_tol * (1.0 + b_max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Optimal,
    Infeasible,
    NumericalBreakdown,
    IterationCapExceeded,
}

/// One executed pivot. Row indices are 0-based internally.
#[derive(Debug, Clone, PartialEq)]
pub struct PivotRecord {
    pub iteration: usize,
    pub entering: usize,
    pub leaving: usize,
    pub ratio: f64,
    pub sigma_p: f64,
    pub objective_before: f64,
    pub objective_after: f64,
    pub redundancy_removed: Option<usize>,
    pub degenerate: bool,
}

/// Snapshot of the base state after `iteration` pivots; index 0 is the
/// initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceState {
    pub base: Vec<usize>,
    pub x: Vec<f64>,
    pub y_c: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl AuditCheck {
    fn pass() -> Self {
        Self {
            pass: true,
            detail: None,
        }
    }

    fn note(detail: String) -> Self {
        Self {
            pass: true,
            detail: Some(detail),
        }
    }

    fn fail(detail: String) -> Self {
        Self {
            pass: false,
            detail: Some(detail),
        }
    }
}

/// Per-check outcome of replaying the trace, with the first counterexample
/// when a check fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub dual_feasibility: AuditCheck,
    pub no_base_repetition: AuditCheck,
    pub no_facet_return: AuditCheck,
    pub leaving_slack_positive: AuditCheck,
    pub monotone_objective: AuditCheck,
    pub iteration_bound: AuditCheck,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.pass)
    }

    pub fn checks(&self) -> [(&'static str, &AuditCheck); 6] {
        [
            ("dual_feasibility", &self.dual_feasibility),
            ("no_base_repetition", &self.no_base_repetition),
            ("no_facet_return", &self.no_facet_return),
            ("leaving_slack_positive", &self.leaving_slack_positive),
            ("monotone_objective", &self.monotone_objective),
            ("iteration_bound", &self.iteration_bound),
        ]
    }
}

#[derive(Debug)]
pub struct SolveOutcome {
    pub status: Status,
    pub x_opt: Option<Vec<f64>>,
    pub objective: Option<f64>,
    pub pivots: Vec<PivotRecord>,
    pub states: Vec<TraceState>,
    pub audit: AuditReport,
    /// The n - d pivot bound, with n the original row count.
    pub bound: usize,
    pub iterations: usize,
    /// Diagnostic message for NumericalBreakdown.
    pub breakdown: Option<String>,
    pub options: SolveOptions,
}

/// Relative tolerance for the per-pivot objective identity check.
const OBJECTIVE_IDENTITY_RTOL: f64 = 1e-7;

pub fn solve_canonical(
    problem: &CanonicalLp,
    cert: &InitialCertificate,
    opts: &SolveOptions,
) -> Result<SolveOutcome, CertificateError> {
    crate::canonical::validate_certificate(problem, cert, opts.dual_tol)?;
    let n = problem.num_rows();
    let d = problem.dim();
    let bound = n - d;
    let cap = opts.max_iter_factor.max(1) * bound.max(1);
    let feas_tol = opts.scaled_feas_tol(&problem.b);

    let a_base = problem.a.select_rows(&cert.base);
    let factorization = match linalg::factorize(&a_base, opts.singular_tol) {
        Ok(f) => f,
        Err(_) => return Err(CertificateError::SingularBase),
    };
    let b_base: Vec<f64> = cert.base.iter().map(|&i| problem.b[i]).collect();
    let x = linalg::solve_columns(&factorization, &b_base);
    let mut state = BaseState {
        base: cert.base.clone(),
        factorization,
        x,
        y_c: cert.y0.clone(),
        iteration: 0,
    };

    let mut active = vec![true; n];
    let mut pivots: Vec<PivotRecord> = Vec::new();
    let mut states = vec![TraceState {
        base: state.base.clone(),
        x: state.x.clone(),
        y_c: state.y_c.clone(),
    }];
    let mut breakdown = None;

    let status = loop {
        let residuals = pivot::compute_residuals(problem, &state.x);
        let nonbase_active: Vec<usize> = (0..n)
            .filter(|&i| active[i] && !state.base.contains(&i))
            .collect();
        let Some(p) = pivot::select_entering(&residuals, &nonbase_active, feas_tol) else {
            break Status::Optimal;
        };
        if pivots.len() >= cap {
            break Status::IterationCapExceeded;
        }
        let exp = pivot::expand_entering(&state, p, problem);
        if pivot::detect_infeasible(&exp, opts.pos_tol) {
            break Status::Infeasible;
        }
        let (q_pos, ratio) = pivot::select_leaving(&state, &exp, opts.pos_tol, opts.ratio_tie_tol);
        let q = state.base[q_pos];
        let new_y_c = match pivot::update_dual(&state, &exp, q_pos, opts.dual_tol) {
            Ok(y) => y,
            Err(e) => {
                breakdown = Some(e.to_string());
                break Status::NumericalBreakdown;
            }
        };
        let redundant = pivot::detect_redundant(&exp, q_pos, opts.pos_tol);
        let objective_before = dot(&problem.c, &state.x);
        let next = match pivot::apply_pivot(&state, q_pos, p, problem, new_y_c, opts.singular_tol) {
            Ok(s) => s,
            Err(e @ PivotError::NumericalBreakdown { .. }) => {
                breakdown = Some(e.to_string());
                break Status::NumericalBreakdown;
            }
            Err(e) => {
                breakdown = Some(e.to_string());
                break Status::NumericalBreakdown;
            }
        };
        let objective_after = dot(&problem.c, &next.x);
        let leaving_slack = dot(problem.a.row(q), &next.x) - problem.b[q];
        if redundant {
            active[q] = false;
        }
        pivots.push(PivotRecord {
            iteration: state.iteration,
            entering: p,
            leaving: q,
            ratio,
            sigma_p: residuals.sigma[p],
            objective_before,
            objective_after,
            redundancy_removed: redundant.then_some(q),
            degenerate: ratio <= opts.dual_tol || leaving_slack <= feas_tol,
        });
        state = next;
        states.push(TraceState {
            base: state.base.clone(),
            x: state.x.clone(),
            y_c: state.y_c.clone(),
        });
    };

    let (x_opt, objective) = match status {
        Status::Optimal => (Some(state.x.clone()), Some(dot(&problem.c, &state.x))),
        _ => (None, None),
    };
    let iterations = pivots.len();
    let mut outcome = SolveOutcome {
        status,
        x_opt,
        objective,
        pivots,
        states,
        audit: AuditReport {
            dual_feasibility: AuditCheck::pass(),
            no_base_repetition: AuditCheck::pass(),
            no_facet_return: AuditCheck::pass(),
            leaving_slack_positive: AuditCheck::pass(),
            monotone_objective: AuditCheck::pass(),
            iteration_bound: AuditCheck::pass(),
        },
        bound,
        iterations,
        breakdown,
        options: opts.clone(),
    };
    outcome.audit = audit_trace(problem, &outcome, opts.dual_tol);
    Ok(outcome)
}

/// Canonicalize, solve, and report in standard-form terms.
pub fn solve_standard(
    problem: &StandardLp,
    opts: &SolveOptions,
) -> Result<SolveOutcome, crate::canonical::CanonicalError> {
    let (canonical, cert) = crate::canonical::to_canonical(problem)?;
    // The constructed certificate always validates.
    Ok(solve_canonical(&canonical, &cert, opts).expect("constructed certificate is valid"))
}

/// Replay a recorded trace against the six structural checks. Failures are
/// report entries, never errors.
pub fn audit_trace(problem: &CanonicalLp, outcome: &SolveOutcome, tol: f64) -> AuditReport {
    let states = &outcome.states;
    let pivots = &outcome.pivots;

    let dual_feasibility = 'dual: {
        for (k, s) in states.iter().enumerate() {
            for (j, &v) in s.y_c.iter().enumerate() {
                if v < -tol {
                    break 'dual AuditCheck::fail(format!(
                        "iteration {k}: y_c[{j}] = {v} < -{tol}"
                    ));
                }
            }
        }
        AuditCheck::pass()
    };

    let no_base_repetition = 'rep: {
        let mut sorted_bases: Vec<Vec<usize>> = Vec::with_capacity(states.len());
        for (k, s) in states.iter().enumerate() {
            let mut sorted = s.base.clone();
            sorted.sort_unstable();
            if let Some(prev) = sorted_bases.iter().position(|b| *b == sorted) {
                break 'rep AuditCheck::fail(format!(
                    "base at iteration {k} repeats base of iteration {prev}"
                ));
            }
            sorted_bases.push(sorted);
        }
        AuditCheck::pass()
    };

    let mut boundary_returns: Vec<String> = Vec::new();
    let no_facet_return = 'ret: {
        for rec in pivots {
            let q = rec.leaving;
            for (l, s) in states.iter().enumerate().skip(rec.iteration + 1) {
                if s.base.contains(&q) {
                    break 'ret AuditCheck::fail(format!(
                        "row {} left at iteration {} but re-entered the base at iteration {}",
                        q + 1,
                        rec.iteration,
                        l
                    ));
                }
                let slack = dot(problem.a.row(q), &s.x) - problem.b[q];
                if slack < -tol {
                    break 'ret AuditCheck::fail(format!(
                        "row {} left at iteration {} but is violated at iteration {} (slack {slack})",
                        q + 1,
                        rec.iteration,
                        l
                    ));
                }
                if slack.abs() <= tol {
                    boundary_returns.push(format!(
                        "row {} sits on its facet again at iteration {}",
                        q + 1,
                        l
                    ));
                }
            }
        }
        if boundary_returns.is_empty() {
            AuditCheck::pass()
        } else {
            AuditCheck::note(format!("boundary returns: {}", boundary_returns.join("; ")))
        }
    };

    let leaving_slack_positive = 'slack: {
        let mut degenerate_exits = 0usize;
        for rec in pivots {
            let q = rec.leaving;
            let x_next = &states[rec.iteration + 1].x;
            let slack = dot(problem.a.row(q), x_next) - problem.b[q];
            if slack < -tol {
                break 'slack AuditCheck::fail(format!(
                    "leaving row {} has slack {slack} after pivot {}",
                    q + 1,
                    rec.iteration
                ));
            }
            if slack.abs() <= tol {
                degenerate_exits += 1;
            }
        }
        if degenerate_exits > 0 {
            AuditCheck::note(format!("{degenerate_exits} degenerate (zero-slack) exits"))
        } else {
            AuditCheck::pass()
        }
    };

    let monotone_objective = 'obj: {
        for rec in pivots {
            let delta = rec.objective_after - rec.objective_before;
            let expected = rec.ratio * (-rec.sigma_p);
            if (delta - expected).abs() > OBJECTIVE_IDENTITY_RTOL * (1.0 + expected.abs()) {
                break 'obj AuditCheck::fail(format!(
                    "pivot {}: objective delta {delta} does not match ratio * violation {expected}",
                    rec.iteration
                ));
            }
            if delta < -tol {
                break 'obj AuditCheck::fail(format!(
                    "pivot {}: objective decreased by {delta}",
                    rec.iteration
                ));
            }
        }
        AuditCheck::pass()
    };

    let iteration_bound = if outcome.iterations <= outcome.bound {
        AuditCheck::pass()
    } else {
        AuditCheck::fail(format!(
            "{} iterations exceed the bound n - d = {}",
            outcome.iterations, outcome.bound
        ))
    };

    AuditReport {
        dual_feasibility,
        no_base_repetition,
        no_facet_return,
        leaving_slack_positive,
        monotone_objective,
        iteration_bound,
    }
}

/// Certificate check for a terminal state: the base rows are tight, every
/// row holds within tolerance, and the dual multipliers are nonnegative.
pub fn verify_optimality(
    problem: &CanonicalLp,
    x: &[f64],
    base: &[usize],
    y_c: &[f64],
    tol: f64,
) -> bool {
    if base.len() != problem.dim() || y_c.len() != base.len() || x.len() != problem.dim() {
        return false;
    }
    for (pos, &i) in base.iter().enumerate() {
        if i >= problem.num_rows() {
            return false;
        }
        if (dot(problem.a.row(i), x) - problem.b[i]).abs() > tol {
            return false;
        }
        if y_c[pos] < -tol {
            return false;
        }
    }
    for i in 0..problem.num_rows() {
        if dot(problem.a.row(i), x) < problem.b[i] - tol {
            return false;
        }
    }
    for j in 0..problem.dim() {
        let mut acc = 0.0;
        for (pos, &i) in base.iter().enumerate() {
            acc += y_c[pos] * problem.a.get(i, j);
        }
        if (acc - problem.c[j]).abs() > tol * (1.0 + problem.c[j].abs()) {
            return false;
        }
    }
    true
}
