//! Dense facet-pivot simplex solver with a runtime invariant auditor and a
//! brute-force oracle for desk-scale ground truth.
//!
//! The solver works on the all-inequality canonical form `min c.x` subject
//! to `A x >= b`, pivoting whole facets (rows) in and out of a d-row base
//! while keeping the dual certificate `c^T = y_c^T A_B`, `y_c >= 0` intact.
//! Box-bounded standard-form problems are converted automatically and come
//! with a free initial certificate. Every solve records a full pivot trace;
//! the auditor replays the trace against the structural guarantees the pivot
//! rule is supposed to maintain (dual feasibility, no base repetition, no
//! facet return, monotone objective, and the n-d iteration bound).
//!
//! See the crate examples for runnable walkthroughs of each capability:
//!
//! ```no_run
//! use facetlp::{generators, solver};
//!
//! let problem = generators::gen_klee_minty(4, 1.0 / 3.0).unwrap();
//! let outcome = solver::solve_standard(&problem, &solver::SolveOptions::default()).unwrap();
//! assert!(outcome.audit.all_pass());
//! ```

pub mod canonical;
pub mod cli;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod pivot;
pub mod solver;

pub use canonical::{CanonicalLp, InitialCertificate, StandardLp};
pub use linalg::DenseMatrix;
pub use solver::{SolveOptions, SolveOutcome, Status};
