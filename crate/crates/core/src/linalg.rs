//! Dense exact matrices over the Gaussian rationals, plus the small
//! double-precision kernels used for diagnostic estimates.
//!
//! Elimination is exact: pivots are chosen among nonzero entries by minimal
//! coefficient height (total bit size), which keeps intermediate rationals
//! small and makes singularity detection a decidable certificate. The
//! determinant falls out of the elimination as a byproduct.

#![allow(clippy::needless_range_loop)]

use crate::numerics::GaussianRational;
use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("matrix is singular")]
pub struct SingularMatrix;

/// Row-major dense matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

/// Total bit size of a Gaussian rational, used as the pivoting heuristic.
fn height(value: &GaussianRational) -> u64 {
    let bits = |r: &crate::numerics::BigRational| r.numer().bits() + r.denom().bits();
    bits(&value.re) + bits(&value.im)
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn set_column(&mut self, j: usize, column: &[GaussianRational]) {
        assert_eq!(column.len(), self.rows, "column length mismatch");
        for (i, value) in column.iter().enumerate() {
            *self.at_mut(i, j) = value.clone();
        }
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() && !self.at(i, j).is_zero() {
                        acc += self.at(i, j) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Forward elimination in place on a (possibly augmented) matrix with
    /// `n` pivot columns. Returns the determinant of the leading n×n block.
    fn eliminate(&mut self, n: usize) -> GaussianRational {
        let mut det = GaussianRational::one();
        for col in 0..n {
            let pivot_row = (col..n)
                .filter(|&r| !self.at(r, col).is_zero())
                .min_by_key(|&r| (height(self.at(r, col)), r));
            let Some(pivot_row) = pivot_row else {
                return GaussianRational::zero();
            };
            if pivot_row != col {
                self.swap_rows(pivot_row, col);
                det = -det;
            }
            let pivot = self.at(col, col).clone();
            det *= &pivot;
            for r in (col + 1)..n {
                if self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col) / &pivot;
                for j in col..self.cols {
                    let delta = &factor * self.at(col, j);
                    *self.at_mut(r, j) -= delta;
                }
            }
        }
        det
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> GaussianRational {
        assert_eq!(self.rows, self.cols, "determinant requires a square matrix");
        self.clone().eliminate(self.rows)
    }

    /// Exact solution of `A·x = b`, together with `det A`.
    pub fn solve(&self, b: &[GaussianRational]) -> Result<SolveOutcome, SingularMatrix> {
        assert_eq!(self.rows, self.cols, "solve requires a square matrix");
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let n = self.rows;
        let mut work = ExactMatrix::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                *work.at_mut(i, j) = self.at(i, j).clone();
            }
            *work.at_mut(i, n) = b[i].clone();
        }
        let det = work.eliminate(n);
        if det.is_zero() {
            return Err(SingularMatrix);
        }
        let mut x = vec![GaussianRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = work.at(i, n).clone();
            for j in (i + 1)..n {
                acc -= work.at(i, j) * &x[j];
            }
            x[i] = acc / work.at(i, i);
        }
        Ok(SolveOutcome { solution: x, det })
    }

    /// Exact inverse via Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols, "inverse requires a square matrix");
        let n = self.rows;
        let mut work = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *work.at_mut(i, j) = self.at(i, j).clone();
            }
            *work.at_mut(i, n + i) = GaussianRational::one();
        }
        if work.eliminate(n).is_zero() {
            return None;
        }
        // Back substitution over the augmented block.
        for i in (0..n).rev() {
            let pivot = work.at(i, i).clone();
            for j in n..2 * n {
                let v = work.at(i, j) / &pivot;
                *work.at_mut(i, j) = v;
            }
            *work.at_mut(i, i) = GaussianRational::one();
            for r in 0..i {
                if work.at(r, i).is_zero() {
                    continue;
                }
                let factor = work.at(r, i).clone();
                for j in n..2 * n {
                    let delta = &factor * work.at(i, j);
                    *work.at_mut(r, j) -= delta;
                }
                *work.at_mut(r, i) = GaussianRational::zero();
            }
        }
        let mut inv = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = work.at(i, n + j).clone();
            }
        }
        Some(inv)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let delta = self.at(i, k) * other.at(k, j);
                    *out.at_mut(i, j) += delta;
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub solution: Vec<GaussianRational>,
    pub det: GaussianRational,
}

/// In-place LU solve of a dense complex f64 system; returns `false` when a
/// pivot collapses below working precision.
pub(crate) fn lu_solve_f64(a: &mut [Complex64], n: usize, b: &mut [Complex64]) -> bool {
    debug_assert_eq!(a.len(), n * n);
    let mut scale = 0.0f64;
    for v in a.iter() {
        scale = scale.max(v.norm());
    }
    let tiny = if scale > 0.0 { scale * 1e-300 } else { 1e-300 };
    for col in 0..n {
        let (pivot_row, pivot_norm) = (col..n)
            .map(|r| (r, a[r * n + col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pivot_norm <= tiny {
            return false;
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(pivot_row * n + j, col * n + j);
            }
            b.swap(pivot_row, col);
        }
        let pivot = a[col * n + col];
        for r in (col + 1)..n {
            let factor = a[r * n + col] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let delta = factor * a[col * n + j];
                a[r * n + j] -= delta;
            }
            b[r] -= factor * b[col];
        }
    }
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in (i + 1)..n {
            acc -= a[i * n + j] * b[j];
        }
        b[i] = acc / a[i * n + i];
    }
    true
}

/// Smallest generalized Rayleigh quotient `min_v (v*Bv)/(v*Gv)` for a
/// Hermitian positive semidefinite `B` and positive definite `G`, estimated
/// by a fixed number of inverse-power iterations on the pencil `(B, G)`.
///
/// Returns `0.0` when `B` is numerically singular. Diagnostic only.
pub(crate) fn min_generalized_rayleigh(b: &[Complex64], g: &[f64], n: usize) -> f64 {
    debug_assert_eq!(b.len(), n * n);
    debug_assert_eq!(g.len(), n * n);
    if n == 0 {
        return 0.0;
    }
    let mut v: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); n];
    let norm = (n as f64).sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    for _ in 0..60 {
        // w = G v, then solve B u = w; u aligns with the smallest eigenvector.
        let mut w: Vec<Complex64> = (0..n)
            .map(|i| (0..n).map(|j| g[i * n + j] * v[j]).sum())
            .collect();
        let mut lu = b.to_vec();
        if !lu_solve_f64(&mut lu, n, &mut w) {
            return 0.0;
        }
        let norm: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return 0.0;
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
    }
    let quad = |m_elem: &dyn Fn(usize, usize) -> Complex64| -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += v[i].conj() * m_elem(i, j) * v[j];
            }
        }
        acc.re
    };
    let num = quad(&|i, j| b[i * n + j]);
    let den = quad(&|i, j| Complex64::new(g[i * n + j], 0.0));
    if den <= 0.0 || !num.is_finite() {
        return 0.0;
    }
    (num / den).max(0.0)
}
