//! Reproducible instance families: Klee-Minty cubes, random feasible
//! instances, and deliberately infeasible instances.
//!
//! All randomness comes from ChaCha8 seeded explicitly; the generator name
//! and seed are written into instance metadata so suites can be reproduced
//! from the files alone.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::canonical::{InstanceMetadata, StandardLp};
use crate::linalg::DenseMatrix;

pub const RNG_NAME: &str = "chacha8";

#[derive(Debug, Error)]
pub enum GenError {
    #[error("dim {0} outside supported range 2..=12")]
    DimRange(usize),
    #[error("eps {0} outside open interval (0, 1/2)")]
    EpsRange(f64),
    #[error("infeasible generator needs m >= 2, got {0}")]
    TooFewRows(usize),
}

/// Klee-Minty style cube: minimize -x_dim over the eps-perturbed unit cube.
/// Known optimum (0, ..., 0, 1) with objective -1.
pub fn gen_klee_minty(dim: usize, eps: f64) -> Result<StandardLp, GenError> {
    if !(2..=12).contains(&dim) {
        return Err(GenError::DimRange(dim));
    }
    if !(eps > 0.0 && eps < 0.5) {
        return Err(GenError::EpsRange(eps));
    }
    let m = 2 * dim;
    let mut a = DenseMatrix::zeros(m, dim);
    let mut b = vec![0.0; m];
    // x_1 >= 0 and x_1 <= 1 (as -x_1 >= -1).
    a.set(0, 0, 1.0);
    b[0] = 0.0;
    a.set(1, 0, -1.0);
    b[1] = -1.0;
    for j in 1..dim {
        let r = 2 * j;
        a.set(r, j, 1.0);
        a.set(r, j - 1, -eps);
        b[r] = 0.0;
        a.set(r + 1, j, -1.0);
        a.set(r + 1, j - 1, -eps);
        b[r + 1] = -1.0;
    }
    let mut c = vec![0.0; dim];
    c[dim - 1] = -1.0;
    Ok(StandardLp {
        name: format!("klee-minty-{dim}"),
        c_bar: c,
        a_bar: a,
        b_bar: b,
        lower: vec![0.0; dim],
        upper: vec![1.0; dim],
        metadata: Some(InstanceMetadata {
            generator: format!("{RNG_NAME}/klee-minty"),
            seed: None,
            eps: Some(eps),
        }),
    })
}

/// Random instance guaranteed feasible: every row is cut below a sampled
/// interior point of the unit cube, with bounds [-1, 2] per variable.
pub fn gen_random_feasible(d: usize, m: usize, seed: u64) -> StandardLp {
    assert!(d >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
    let mut a = DenseMatrix::zeros(m, d);
    let mut b = vec![0.0; m];
    for i in 0..m {
        let mut az = 0.0;
        for j in 0..d {
            let v = rng.gen_range(-1.0..1.0);
            a.set(i, j, v);
            az += v * z[j];
        }
        let slack: f64 = rng.gen_range(0.0..1.0);
        b[i] = az - (1.0 - slack).max(f64::MIN_POSITIVE);
    }
    let c: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    StandardLp {
        name: format!("random-d{d}-m{m}-s{seed}"),
        c_bar: c,
        a_bar: a,
        b_bar: b,
        lower: vec![-1.0; d],
        upper: vec![2.0; d],
        metadata: Some(InstanceMetadata {
            generator: format!("{RNG_NAME}/random-feasible"),
            seed: Some(seed),
            eps: None,
        }),
    }
}

/// Random instance made infeasible by a directly contradictory row pair:
/// `a.x >= 1` together with `-a.x >= 0`.
pub fn gen_infeasible(d: usize, m: usize, seed: u64) -> Result<StandardLp, GenError> {
    if m < 2 {
        return Err(GenError::TooFewRows(m));
    }
    let mut p = gen_random_feasible(d, m, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let mut dir: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm: f64 = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-9 {
        dir[0] = 1.0;
    } else {
        for v in &mut dir {
            *v /= norm;
        }
    }
    for j in 0..d {
        p.a_bar.set(0, j, dir[j]);
        p.a_bar.set(1, j, -dir[j]);
    }
    p.b_bar[0] = 1.0;
    p.b_bar[1] = 0.0;
    p.name = format!("infeasible-d{d}-m{m}-s{seed}");
    if let Some(meta) = &mut p.metadata {
        meta.generator = format!("{RNG_NAME}/infeasible");
    }
    Ok(p)
}
