//! Fixed-point iteration of a self-adjoint contraction with per-step
//! diagnostics.

use num_complex::Complex64;
use serde::Serialize;

/// Diagnostics of one iterate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Step {
    pub n: usize,
    pub norm: f64,
    /// `‖f_n − f_{n−1}‖ / ‖f_0‖`.
    pub delta: f64,
    pub cr_residual: f64,
}

/// Summary of the leading spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub top_eigenvalues: Vec<f64>,
    pub top_cr_residuals: Vec<f64>,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// Largest eigenvalue strictly below the cluster at one (`< 1 - 1e-6`).
    pub gap_eigenvalue: Option<f64>,
}

/// Outcome of [`iterate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub steps: Vec<Step>,
    pub converged: bool,
    pub iterations: usize,
    pub stop_tol: f64,
    /// Largest relative increase of the norm between successive iterates.
    pub max_norm_increase: f64,
    /// Largest relative increase of the successive difference.
    pub max_delta_increase: f64,
    /// `|⟨f − L, h_j⟩| / (‖f‖‖h_j‖)` per atom, filled by the caller.
    pub orthogonality: Vec<f64>,
    pub spectral: Option<SpectralSummary>,
}

impl ConvergenceReport {
    /// Whether norms are non-increasing up to `tol` (relative).
    pub fn norms_monotone(&self, tol: f64) -> bool {
        self.max_norm_increase <= tol
    }

    pub fn final_delta(&self) -> f64 {
        self.steps.last().map(|s| s.delta).unwrap_or(0.0)
    }

    pub fn final_cr_residual(&self) -> f64 {
        self.steps.last().map(|s| s.cr_residual).unwrap_or(0.0)
    }
}

fn weighted_norm(v: &[Complex64], w: &[f64]) -> f64 {
    v.iter().zip(w).map(|(a, b)| b * a.norm_sqr()).sum::<f64>().sqrt()
}

/// Iterate `f ↦ apply(f)` from `f0` until the successive difference falls
/// below `stop_tol · ‖f0‖` or `max_iter` steps are taken.
///
/// `weights` defines the norm; `cr` maps values to their holomorphy residual.
/// Non-convergence is reported, not raised.
pub fn iterate<A, C>(
    apply: A,
    weights: &[f64],
    f0: &[Complex64],
    max_iter: usize,
    stop_tol: f64,
    cr: C,
) -> (Vec<Complex64>, ConvergenceReport)
where
    A: Fn(&[Complex64]) -> Vec<Complex64>,
    C: Fn(&[Complex64]) -> f64,
{
    let n0 = weighted_norm(f0, weights);
    let mut steps = vec![Step {
        n: 0,
        norm: n0,
        delta: 0.0,
        cr_residual: cr(f0),
    }];
    let mut cur = f0.to_vec();
    let mut converged = n0 == 0.0;
    let mut max_norm_increase: f64 = 0.0;
    let mut max_delta_increase: f64 = 0.0;
    let mut n = 0;
    while !converged && n < max_iter {
        n += 1;
        let next = apply(&cur);
        let diff: Vec<Complex64> = next.iter().zip(&cur).map(|(a, b)| a - b).collect();
        let delta = weighted_norm(&diff, weights) / n0;
        let norm = weighted_norm(&next, weights);
        let prev = steps[steps.len() - 1];
        max_norm_increase = max_norm_increase.max((norm - prev.norm) / n0);
        if n >= 2 {
            max_delta_increase = max_delta_increase.max(delta - prev.delta);
        }
        steps.push(Step {
            n,
            norm,
            delta,
            cr_residual: cr(&next),
        });
        cur = next;
        converged = delta <= stop_tol;
    }
    let report = ConvergenceReport {
        steps,
        converged,
        iterations: n,
        stop_tol,
        max_norm_increase,
        max_delta_increase,
        orthogonality: Vec::new(),
        spectral: None,
    };
    (cur, report)
}
