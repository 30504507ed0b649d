//! Levinson recursion for real symmetric positive definite Toeplitz systems.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// Factored symmetric Toeplitz matrix `T[m][n] = col[|m - n|]`.
///
/// The recursion stores the forward predictors, so each solve costs
/// O(n²) with no further factorization work.
#[derive(Debug, Clone)]
pub struct Toeplitz {
    col: Vec<f64>,
    /// `pred[k]` is the order-k forward predictor (length k).
    pred: Vec<Vec<f64>>,
    /// Prediction error energies, `err[k]` for order k.
    err: Vec<f64>,
}

impl Toeplitz {
    /// Run the Durbin recursion on the first column.
    pub fn new(col: &[f64]) -> Result<Self> {
        let n = col.len();
        if n == 0 {
            return Err(Error::Parameter("empty Toeplitz column".into()));
        }
        if !(col[0] > 0.0) {
            return Err(Error::Numerical("non-positive Toeplitz diagonal".into()));
        }
        let mut pred: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut err = Vec::with_capacity(n);
        pred.push(Vec::new());
        err.push(col[0]);
        let mut a: Vec<f64> = Vec::new();
        for k in 1..n {
            let mut acc = col[k];
            for (j, aj) in a.iter().enumerate() {
                acc -= aj * col[k - 1 - j];
            }
            let refl = acc / err[k - 1];
            let mut next = vec![0.0; k];
            for j in 0..k - 1 {
                next[j] = a[j] - refl * a[k - 2 - j];
            }
            next[k - 1] = refl;
            let e = err[k - 1] * (1.0 - refl * refl);
            if !(e > 0.0) {
                return Err(Error::Numerical(format!(
                    "Toeplitz matrix not positive definite at order {k}"
                )));
            }
            err.push(e);
            a = next.clone();
            pred.push(next);
        }
        Ok(Self {
            col: col.to_vec(),
            pred,
            err,
        })
    }

    pub fn dim(&self) -> usize {
        self.col.len()
    }

    /// Reflection (Verblunsky) coefficients of the recursion.
    pub fn reflection_coefficients(&self) -> Vec<f64> {
        self.pred.iter().skip(1).map(|p| p[p.len() - 1]).collect()
    }

    /// Solve `T x = b` by the Levinson bordering recursion.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        x[0] = b[0] / self.col[0];
        for k in 1..n {
            // backward predictor of order k is the reversed forward predictor
            let a = &self.pred[k];
            let mut r = b[k];
            for j in 0..k {
                r -= x[j] * self.col[k - j];
            }
            let mu = r / self.err[k];
            for j in 0..k {
                x[j] -= mu * a[k - 1 - j];
            }
            x[k] = mu;
        }
        x
    }

    /// Dense copy of the matrix.
    pub fn dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| self.col[i.abs_diff(j)])
    }

    /// Spectral condition number (ratio of extreme eigenvalues).
    pub fn condition(&self) -> f64 {
        let eig = SymmetricEigen::new(self.dense());
        let max = eig.eigenvalues.iter().cloned().fold(f64::MIN, f64::max);
        let min = eig.eigenvalues.iter().cloned().fold(f64::MAX, f64::min);
        if min <= 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }
}
