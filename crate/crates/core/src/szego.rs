//! Weighted Szegő projection on a single circle.
//!
//! The Hardy span `e^{inθ}`, `0 <= n <= N`, is orthogonal-projected in
//! `L²(|cos θ|^{-2β} dθ)`. The Gram matrix is the Toeplitz matrix of the
//! weight's Fourier moments; the unweighted case reduces to truncating the
//! discrete Fourier series.

use crate::error::{Error, Result};
use crate::geometry::CircleSlice;
use crate::quad::{gauss_jacobi, gauss_legendre};
use crate::toeplitz::Toeplitz;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default cap on the Gram condition number.
pub const DEFAULT_CONDITION_CAP: f64 = 1e12;

const GAUSS_POINTS: usize = 24;

/// Moments `c_k = ∫_{-π}^{π} e^{-ikθ} |cos θ|^{-2β} dθ` for `k = 0..=n`.
///
/// Odd moments vanish by the symmetry `θ ↦ π - θ`. Even moments use
/// `c_{2m} = 4 (-1)^m ∫_0^{π/2} sin^{-2β}u cos(2mu) du`, integrated with a
/// Gauss–Jacobi panel absorbing `u^{-2β}` at the origin followed by
/// Gauss–Legendre panels.
pub fn weight_moments(beta: f64, n: usize) -> Result<Vec<f64>> {
    let panels = 8 + n / 4;
    weight_moments_with_panels(beta, n, panels)
}

/// [`weight_moments`] with an explicit panel count.
pub fn weight_moments_with_panels(beta: f64, n: usize, panels: usize) -> Result<Vec<f64>> {
    if !(0.0..0.5).contains(&beta) {
        return Err(Error::Parameter(format!("beta must lie in [0, 1/2), got {beta}")));
    }
    if panels == 0 {
        return Err(Error::Parameter("at least one panel is required".into()));
    }
    let mut c = vec![0.0; n + 1];
    if beta == 0.0 {
        c[0] = 2.0 * PI;
        return Ok(c);
    }
    let h = 0.5 * PI / panels as f64;
    let first = gauss_jacobi(GAUSS_POINTS, 0.0, -2.0 * beta);
    let rest = gauss_legendre(GAUSS_POINTS);
    // (u, w·sin^{-2β}u) over [0, π/2]
    let mut nodes: Vec<(f64, f64)> = Vec::with_capacity(panels * GAUSS_POINTS);
    for (x, w) in first.nodes.iter().zip(&first.weights) {
        let u = 0.5 * h * (x + 1.0);
        // ∫_0^h u^{-2β} g du = (h/2)^{1-2β} Σ w g(u)
        let scale = (0.5 * h).powf(1.0 - 2.0 * beta);
        let ratio = (u.sin() / u).powf(-2.0 * beta);
        nodes.push((u, w * scale * ratio));
    }
    for p in 1..panels {
        let a = p as f64 * h;
        for (x, w) in rest.nodes.iter().zip(&rest.weights) {
            let u = a + 0.5 * h * (x + 1.0);
            nodes.push((u, 0.5 * h * w * u.sin().powf(-2.0 * beta)));
        }
    }
    for (k, ck) in c.iter_mut().enumerate() {
        if k % 2 == 1 {
            continue;
        }
        let m = k / 2;
        let s: f64 = nodes.iter().map(|(u, w)| w * (k as f64 * u).cos()).sum();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        *ck = 4.0 * sign * s;
    }
    Ok(c)
}

/// Hardy coefficients `a_0..a_N` of `Σ a_n e^{inθ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyCoeffs(pub Vec<Complex64>);

impl HardyCoeffs {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Boundary samples `Σ a_n e^{inθ_j}`.
    pub fn boundary_values(&self, theta: &[f64]) -> Vec<Complex64> {
        theta
            .iter()
            .map(|&th| horner(&self.0, Complex64::from_polar(1.0, th)))
            .collect()
    }
}

fn horner(a: &[Complex64], w: Complex64) -> Complex64 {
    a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c)
}

/// Evaluate `Σ a_n (z - t)^n` for `|z - t| <= 1`.
pub fn evaluate_hardy(coeffs: &HardyCoeffs, t: f64, z: Complex64) -> Result<Complex64> {
    let w = z - t;
    if w.norm() > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "|z - t| = {} exceeds the unit radius",
            w.norm()
        )));
    }
    Ok(horner(&coeffs.0, w))
}

/// Gram system of one weight, shared by every circle of the family.
#[derive(Debug, Clone)]
pub struct SzegoSolver {
    pub beta: f64,
    pub n: usize,
    pub moments: Vec<f64>,
    pub condition: f64,
    gram: Toeplitz,
}

impl SzegoSolver {
    pub fn new(beta: f64, n: usize) -> Result<Self> {
        Self::with_cap(beta, n, DEFAULT_CONDITION_CAP)
    }

    /// Build and factor the Gram matrix, failing if its condition number
    /// exceeds `cap`.
    pub fn with_cap(beta: f64, n: usize, cap: f64) -> Result<Self> {
        Self::from_moments(beta, weight_moments(beta, n)?, cap)
    }

    /// Solver whose Gram matrix is the discrete Gram matrix of `slice`'s
    /// rule, so the projection is orthogonal in the discrete inner product
    /// whichever rule produced the weights.
    pub fn for_slice(slice: &CircleSlice, n: usize) -> Result<Self> {
        Self::from_moments(slice.beta, discrete_moments(slice, n), DEFAULT_CONDITION_CAP)
    }

    fn from_moments(beta: f64, moments: Vec<f64>, cap: f64) -> Result<Self> {
        let n = moments.len() - 1;
        let gram = Toeplitz::new(&moments)?;
        let condition = gram.condition();
        if !(condition <= cap) {
            return Err(Error::IllConditioned { cond: condition, cap });
        }
        Ok(Self {
            beta,
            n,
            moments,
            condition,
            gram,
        })
    }

    fn check_slice(&self, slice: &CircleSlice, len: usize) -> Result<()> {
        if (slice.beta - self.beta).abs() > 1e-15 {
            return Err(Error::Parameter(format!(
                "solver beta {} differs from slice beta {}",
                self.beta, slice.beta
            )));
        }
        if 2 * self.n >= slice.n_theta {
            return Err(Error::Parameter(format!(
                "degree {} is not resolvable on {} angle nodes",
                self.n, slice.n_theta
            )));
        }
        if len != slice.n_theta {
            return Err(Error::GridMismatch(format!(
                "{len} samples for a circle with {} nodes",
                slice.n_theta
            )));
        }
        let d = discrete_moments(slice, self.n);
        let scale = self.moments[0].abs();
        if let Some(k) = (0..=self.n).find(|&k| (d[k] - self.moments[k]).abs() > 1e-9 * scale) {
            return Err(Error::Parameter(format!(
                "the circle rule does not reproduce moment {k}; build the solver with for_slice"
            )));
        }
        Ok(())
    }

    /// Weighted inner products `b_m = ⟨g, e^{imθ}⟩`.
    fn rhs(&self, g: &[Complex64], slice: &CircleSlice) -> Vec<Complex64> {
        (0..=self.n)
            .map(|m| {
                g.iter()
                    .zip(&slice.theta)
                    .zip(&slice.quad)
                    .map(|((v, th), q)| v * Complex64::from_polar(*q, -(m as f64) * th))
                    .sum()
            })
            .collect()
    }

    /// Best weighted-L² approximation of `g` from the Hardy span.
    pub fn project_boundary(&self, g: &[Complex64], slice: &CircleSlice) -> Result<HardyCoeffs> {
        self.check_slice(slice, g.len())?;
        if self.beta == 0.0 {
            return Ok(self.fourier_truncation(g, slice));
        }
        Ok(HardyCoeffs(self.gram.solve(&self.rhs(g, slice))))
    }

    /// Toeplitz-path projection, used even when `beta = 0`.
    pub fn project_boundary_gram(
        &self,
        g: &[Complex64],
        slice: &CircleSlice,
    ) -> Result<HardyCoeffs> {
        self.check_slice(slice, g.len())?;
        Ok(HardyCoeffs(self.gram.solve(&self.rhs(g, slice))))
    }

    fn fourier_truncation(&self, g: &[Complex64], slice: &CircleSlice) -> HardyCoeffs {
        let n = slice.n_theta as f64;
        HardyCoeffs(
            (0..=self.n)
                .map(|m| {
                    g.iter()
                        .zip(&slice.theta)
                        .map(|(v, th)| v * Complex64::from_polar(1.0, -(m as f64) * th))
                        .sum::<Complex64>()
                        / n
                })
                .collect(),
        )
    }

    /// Project and return boundary samples of the projection.
    pub fn apply(&self, g: &[Complex64], slice: &CircleSlice) -> Result<Vec<Complex64>> {
        Ok(self.project_boundary(g, slice)?.boundary_values(&slice.theta))
    }

    /// Matrix of the projection on boundary samples, `V G^{-1} V^H Q`.
    pub fn boundary_matrix(&self, slice: &CircleSlice) -> Result<DMatrix<Complex64>> {
        self.check_slice(slice, slice.n_theta)?;
        let n = slice.n_theta;
        // columns of G^{-1} V^H Q
        let mut coef = DMatrix::<Complex64>::zeros(self.n + 1, n);
        for c in 0..n {
            let rhs: Vec<Complex64> = (0..=self.n)
                .map(|m| Complex64::from_polar(slice.quad[c], -(m as f64) * slice.theta[c]))
                .collect();
            let sol = self.gram.solve(&rhs);
            for (m, v) in sol.into_iter().enumerate() {
                coef[(m, c)] = v;
            }
        }
        let v = DMatrix::from_fn(n, self.n + 1, |r, m| {
            Complex64::from_polar(1.0, m as f64 * slice.theta[r])
        });
        Ok(v * coef)
    }
}

/// Moments `Σ_j q_j cos(kθ_j)`, `k = 0..=n`, of a circle rule. The sine
/// parts vanish because the nodes and weights are symmetric under `θ ↦ −θ`.
pub fn discrete_moments(slice: &CircleSlice, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|k| {
            slice
                .theta
                .iter()
                .zip(&slice.quad)
                .map(|(th, q)| q * (k as f64 * th).cos())
                .sum()
        })
        .collect()
}

/// Weighted boundary inner product `Σ g1 conj(g2) q`.
pub fn circle_inner(g1: &[Complex64], g2: &[Complex64], slice: &CircleSlice) -> Result<Complex64> {
    if g1.len() != slice.n_theta || g2.len() != slice.n_theta {
        return Err(Error::GridMismatch(format!(
            "samples of length {} and {} on a circle with {} nodes",
            g1.len(),
            g2.len(),
            slice.n_theta
        )));
    }
    Ok(g1
        .iter()
        .zip(g2)
        .zip(&slice.quad)
        .map(|((a, b), q)| a * b.conj() * q)
        .sum())
}
