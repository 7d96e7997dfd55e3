//! Dense complex linear algebra for the handful of modes in the model.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};

/// Square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        Self {
            dim: N,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    /// `y = A x`, written into `out`.
    pub fn mul_vec_into(&self, x: &[Complex64], out: &mut [Complex64]) {
        for (row, slot) in self.data.chunks_exact(self.dim).zip(out.iter_mut()) {
            *slot = row.iter().zip(x).map(|(a, v)| a * v).sum();
        }
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        self.mul_vec_into(x, &mut out);
        out
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        self.data
            .chunks_exact(self.dim.max(1))
            .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Solves `A x = b` by Gaussian elimination with partial pivoting.
    ///
    /// A pivot below `1e-14 · ‖A‖∞` is treated as singular.
    pub fn solve(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim;
        assert_eq!(rhs.len(), n, "right-hand side length mismatch");
        let tiny = 1e-14 * self.norm_inf();
        let mut a = self.data.clone();
        let mut b = rhs.to_vec();

        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i * n + col].norm().total_cmp(&a[j * n + col].norm()))
                .unwrap();
            if a[pivot * n + col].norm() <= tiny || a[pivot * n + col].norm() == 0.0 {
                return Err(Error::Singular);
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot * n + k);
                }
                b.swap(col, pivot);
            }
            let inv = a[col * n + col].inv();
            for row in col + 1..n {
                let factor = a[row * n + col] * inv;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in col..n {
                    let upper = a[col * n + k];
                    a[row * n + k] -= factor * upper;
                }
                let upper = b[col];
                b[row] -= factor * upper;
            }
        }

        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for row in (0..n).rev() {
            let tail: Complex64 = (row + 1..n).map(|k| a[row * n + k] * x[k]).sum();
            x[row] = (b[row] - tail) / a[row * n + row];
        }
        Ok(x)
    }
}
