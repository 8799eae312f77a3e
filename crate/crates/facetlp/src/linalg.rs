//! Dense real linear algebra: LU factorization with partial pivoting and the
//! two solve directions the pivot loop needs every iteration.

use thiserror::Error;

/// Row-major dense matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("entry count {got} does not match {rows}x{cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch {
                rows,
                cols,
                got: entries.len(),
            });
        }
        if let Some(i) = entries.iter().position(|v| !v.is_finite()) {
            return Err(MatrixError::NonFinite(i));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    /// Build a matrix from a list of row slices, all of equal length.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            entries.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Gather the given rows into a new matrix, in the order given.
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            entries.extend_from_slice(self.row(i));
        }
        Self {
            rows: indices.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Matrix-vector product `self * x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), x)).collect()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Error)]
#[error("singular matrix detected at elimination step {step}")]
pub struct SingularError {
    pub step: usize,
}

/// LU factorization with partial (row) pivoting of a square matrix.
///
/// Stores the combined L\U factors in place plus the row permutation; `L` has
/// unit diagonal.
#[derive(Debug, Clone)]
pub struct Factorization {
    lu: DenseMatrix,
    perm: Vec<usize>,
    pivot_magnitudes: Vec<f64>,
}

impl Factorization {
    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    pub fn pivot_magnitudes(&self) -> &[f64] {
        &self.pivot_magnitudes
    }

    pub fn min_pivot_magnitude(&self) -> f64 {
        self.pivot_magnitudes
            .iter()
            .fold(f64::INFINITY, |m, v| m.min(*v))
    }
}

/// Factorize a square matrix, failing with [`SingularError`] when a pivot is
/// negligible relative to the column being eliminated.
pub fn factorize(m: &DenseMatrix, tol: f64) -> Result<Factorization, SingularError> {
    assert_eq!(m.rows(), m.cols(), "factorize requires a square matrix");
    assert!(tol > 0.0);
    let d = m.rows();
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..d).collect();
    let mut pivot_magnitudes = Vec::with_capacity(d);
    let scale = m.max_abs().max(1.0);

    for k in 0..d {
        // Column max below (and including) the diagonal decides the pivot row.
        let mut best = k;
        let mut best_mag = lu.get(k, k).abs();
        for r in k + 1..d {
            let mag = lu.get(r, k).abs();
            if mag > best_mag {
                best = r;
                best_mag = mag;
            }
        }
        if best_mag <= tol * scale {
            return Err(SingularError { step: k });
        }
        if best != k {
            for c in 0..d {
                let a = lu.get(k, c);
                let b = lu.get(best, c);
                lu.set(k, c, b);
                lu.set(best, c, a);
            }
            perm.swap(k, best);
        }
        pivot_magnitudes.push(best_mag);
        let pivot = lu.get(k, k);
        for r in k + 1..d {
            let factor = lu.get(r, k) / pivot;
            lu.set(r, k, factor);
            for c in k + 1..d {
                lu.set(r, c, lu.get(r, c) - factor * lu.get(k, c));
            }
        }
    }
    Ok(Factorization {
        lu,
        perm,
        pivot_magnitudes,
    })
}

/// Solve `A x = rhs` given the factorization of `A`.
pub fn solve_columns(f: &Factorization, rhs: &[f64]) -> Vec<f64> {
    let d = f.dim();
    assert_eq!(rhs.len(), d);
    // Permute rhs, then forward substitution (unit lower), then back substitution.
    let mut x: Vec<f64> = f.perm.iter().map(|&i| rhs[i]).collect();
    for r in 1..d {
        for c in 0..r {
            x[r] -= f.lu.get(r, c) * x[c];
        }
    }
    for r in (0..d).rev() {
        for c in r + 1..d {
            x[r] -= f.lu.get(r, c) * x[c];
        }
        x[r] /= f.lu.get(r, r);
    }
    x
}

/// Solve `y^T A = row` (the transposed system) given the factorization of `A`.
pub fn solve_rows(f: &Factorization, row: &[f64]) -> Vec<f64> {
    let d = f.dim();
    assert_eq!(row.len(), d);
    // A^T = U^T L^T P, so solve U^T z = row, L^T v = z, then y = P^T v.
    let mut z = row.to_vec();
    for r in 0..d {
        for c in 0..r {
            z[r] -= f.lu.get(c, r) * z[c];
        }
        z[r] /= f.lu.get(r, r);
    }
    for r in (0..d).rev() {
        for c in r + 1..d {
            z[r] -= f.lu.get(c, r) * z[c];
        }
    }
    let mut y = vec![0.0; d];
    for (i, &p) in f.perm.iter().enumerate() {
        y[p] = z[i];
    }
    y
}
