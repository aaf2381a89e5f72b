//! Dense small-matrix kernel.
//!
//! Everything here operates on matrices no larger than m^2 x m^2 for a small
//! number of test functions m, so a plain row-major buffer and a cyclic
//! Jacobi eigensolver are entirely adequate.

use crate::error::{Error, Result};

/// Relative eigenvalue floor below which a matrix is treated as singular.
pub const PD_TOLERANCE: f64 = 1e-10;

/// Dense row-major matrix of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(
                "matrix dimensions must be at least 1x1".into(),
            ));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "buffer of length {} cannot hold a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * out.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Largest absolute entry of self - other; shapes must agree.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot compare {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let scale = self
            .data
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
            .max(1.0);
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if (self.get(i, j) - self.get(j, i)).abs() > tol * scale {
                    return false;
                }
            }
        }
        true
    }
}

/// Kronecker product A (x) B: the block matrix with blocks a_ij * B.
pub fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for ia in 0..a.rows() {
        for ja in 0..a.cols() {
            let factor = a.get(ia, ja);
            for ib in 0..b.rows() {
                for jb in 0..b.cols() {
                    out.set(
                        ia * b.rows() + ib,
                        ja * b.cols() + jb,
                        factor * b.get(ib, jb),
                    );
                }
            }
        }
    }
    out
}

/// Quadratic form v' M v.
pub fn quadratic_form(v: &[f64], m: &Matrix) -> Result<f64> {
    if m.rows() != m.cols() || m.rows() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "quadratic form needs an {n}x{n} matrix for a vector of length {n}, got {}x{}",
            m.rows(),
            m.cols(),
            n = v.len()
        )));
    }
    let mut total = 0.0;
    for (i, &vi) in v.iter().enumerate() {
        let mut row = 0.0;
        for (j, &vj) in v.iter().enumerate() {
            row += m.get(i, j) * vj;
        }
        total += vi * row;
    }
    Ok(total)
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns (eigenvalues, eigenvectors) with eigenvectors in columns.
pub fn jacobi_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if !a.is_symmetric(1e-10) {
        return Err(Error::NotSymmetric);
    }
    let n = a.rows();
    let mut work = a.clone();
    let mut vectors = Matrix::identity(n);
    let scale = work
        .data
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
        .max(1.0);
    let tol = 1e-15 * scale;

    for _sweep in 0..100 {
        let mut off = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(work.get(i, j).abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = work.get(p, q);
                if apq.abs() <= tol {
                    continue;
                }
                let app = work.get(p, p);
                let aqq = work.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k != p && k != q {
                        let akp = work.get(k, p);
                        let akq = work.get(k, q);
                        let new_kp = c * akp - s * akq;
                        let new_kq = s * akp + c * akq;
                        work.set(k, p, new_kp);
                        work.set(p, k, new_kp);
                        work.set(k, q, new_kq);
                        work.set(q, k, new_kq);
                    }
                }
                work.set(p, p, app - t * apq);
                work.set(q, q, aqq + t * apq);
                work.set(p, q, 0.0);
                work.set(q, p, 0.0);

                for k in 0..n {
                    let vkp = vectors.get(k, p);
                    let vkq = vectors.get(k, q);
                    vectors.set(k, p, c * vkp - s * vkq);
                    vectors.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    let eigenvalues = (0..n).map(|i| work.get(i, i)).collect();
    Ok((eigenvalues, vectors))
}

/// Rebuild V f(diag) V' from an eigendecomposition; exactly symmetric by
/// construction.
fn rebuild_symmetric(eigenvalues: &[f64], vectors: &Matrix, f: impl Fn(f64) -> f64) -> Matrix {
    let n = eigenvalues.len();
    let mapped: Vec<f64> = eigenvalues.iter().map(|&l| f(l)).collect();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut sum = 0.0;
            for (k, &w) in mapped.iter().enumerate() {
                sum += w * vectors.get(i, k) * vectors.get(j, k);
            }
            out.set(i, j, sum);
            out.set(j, i, sum);
        }
    }
    out
}

fn spd_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let (eigenvalues, vectors) = jacobi_eigen(a)?;
    let max = eigenvalues.iter().fold(f64::MIN, |m, &v| m.max(v));
    let min = eigenvalues.iter().fold(f64::MAX, |m, &v| m.min(v));
    if min <= PD_TOLERANCE * max.max(0.0) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
        });
    }
    Ok((eigenvalues, vectors))
}

/// Symmetric inverse square root of a symmetric positive definite matrix:
/// the unique symmetric B with B B = A^-1.
pub fn spd_inverse_sqrt(a: &Matrix) -> Result<Matrix> {
    let (eigenvalues, vectors) = spd_eigen(a)?;
    Ok(rebuild_symmetric(&eigenvalues, &vectors, |l| {
        1.0 / l.sqrt()
    }))
}

/// Inverse of a symmetric positive definite matrix via eigendecomposition.
pub fn spd_inverse(a: &Matrix) -> Result<Matrix> {
    let (eigenvalues, vectors) = spd_eigen(a)?;
    Ok(rebuild_symmetric(&eigenvalues, &vectors, |l| 1.0 / l))
}
