//! The averaged two-circle operator `πf(z) = ½(T_{t1}f(z) + T_{t2}f(z))`.
//!
//! Circle `C_t` through grid node `(x, y_j)` samples the grid rows at the
//! mirrored angles, so restriction to a circle only interpolates along `x`.
//! Interpolation along `x` is translation invariant, which makes the discrete
//! operator block diagonal in the `x`-frequency: one `ny × ny` block per
//! frequency. [`PiOperator::apply_pointwise`] evaluates the same operator node
//! by node (restrict, project, evaluate) and is used to cross-check the blocks.

use crate::error::{Error, Result};
use crate::geometry::{circle_nodes, tangent_centers, CircleSlice, GridFunction, StripGrid};
use crate::szego::SzegoSolver;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Largest grid for which a dense matrix is assembled.
pub const DENSE_NODE_LIMIT: usize = 5000;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Interpolation along `x` used to restrict grid data to circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interp {
    /// Periodic trigonometric interpolation.
    Spectral,
    /// Periodic four-point Lagrange (cubic) interpolation.
    Cubic,
}

impl fmt::Display for Interp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interp::Spectral => "spectral",
            Interp::Cubic => "cubic",
        })
    }
}

impl FromStr for Interp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "spectral" => Ok(Interp::Spectral),
            "cubic" => Ok(Interp::Cubic),
            other => Err(Error::Config(format!(
                "unknown interpolation scheme `{other}` (expected spectral or cubic)"
            ))),
        }
    }
}

fn lagrange4(r: f64) -> [f64; 4] {
    [
        -r * (r - 1.0) * (r - 2.0) / 6.0,
        (r + 1.0) * (r - 1.0) * (r - 2.0) / 2.0,
        -(r + 1.0) * r * (r - 2.0) / 2.0,
        (r + 1.0) * r * (r - 1.0) / 6.0,
    ]
}

/// Fourier symbol of the shift `f(x) ↦ f(x + delta)` under the scheme.
fn shift_symbol(interp: Interp, omega: f64, nyquist: bool, delta: f64, dx: f64) -> Complex64 {
    match interp {
        Interp::Spectral => {
            if nyquist {
                Complex64::new((omega * delta).cos(), 0.0)
            } else {
                Complex64::from_polar(1.0, omega * delta)
            }
        }
        Interp::Cubic => {
            let s = delta / dx;
            let m0 = s.floor();
            let l = lagrange4(s - m0);
            l.iter()
                .enumerate()
                .map(|(o, w)| Complex64::from_polar(*w, omega * (m0 + o as f64 - 1.0) * dx))
                .sum()
        }
    }
}

/// Discretised `π` on a strip grid.
pub struct PiOperator {
    pub grid: Arc<StripGrid>,
    /// Szegő truncation degree.
    pub n: usize,
    /// Angle nodes per circle (twice the number of grid rows).
    pub n_theta: usize,
    pub interp: Interp,
    solver: SzegoSolver,
    slice: CircleSlice,
    omega: Vec<f64>,
    blocks: Vec<DMatrix<Complex64>>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for PiOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PiOperator")
            .field("nx", &self.grid.nx)
            .field("ny", &self.grid.ny)
            .field("n", &self.n)
            .field("n_theta", &self.n_theta)
            .field("interp", &self.interp)
            .finish()
    }
}

impl PiOperator {
    /// Assemble the frequency blocks. Requires `n < ny`.
    pub fn new(grid: Arc<StripGrid>, n: usize, interp: Interp) -> Result<Self> {
        let ny = grid.ny;
        let nx = grid.nx;
        if n >= ny {
            return Err(Error::Parameter(format!(
                "Szegő degree {n} must be below ny = {ny}"
            )));
        }
        let n_theta = 2 * ny;
        let beta = grid.beta();
        let slice = circle_nodes(0.0, n_theta, beta)?;
        let solver = SzegoSolver::for_slice(&slice, n)?;
        let p = solver.boundary_matrix(&slice)?;
        let cos: Vec<f64> = slice.theta.iter().map(|t| t.cos()).collect();
        let fold: Vec<usize> = (0..n_theta).map(|r| if r < ny { r } else { n_theta - 1 - r }).collect();
        let period = nx as f64 * grid.dx;
        let omega: Vec<f64> = (0..nx)
            .map(|k| {
                let kk = if k <= nx / 2 { k as f64 } else { k as f64 - nx as f64 };
                2.0 * PI * kk / period
            })
            .collect();
        let dx = grid.dx;
        let blocks: Vec<DMatrix<Complex64>> = (0..nx)
            .into_par_iter()
            .map(|k| {
                let nyquist = nx.is_multiple_of(2) && k == nx / 2;
                let w = omega[k];
                let mut a = DMatrix::<Complex64>::zeros(ny, ny);
                for r in 0..n_theta {
                    for c in 0..n_theta {
                        let sym = shift_symbol(interp, w, nyquist, cos[c] - cos[r], dx);
                        a[(fold[r], fold[c])] += 0.5 * p[(r, c)] * sym;
                    }
                }
                a
            })
            .collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(nx);
        let inverse = planner.plan_fft_inverse(nx);
        Ok(Self {
            grid,
            n,
            n_theta,
            interp,
            solver,
            slice,
            omega,
            blocks,
            forward,
            inverse,
        })
    }

    pub fn solver(&self) -> &SzegoSolver {
        &self.solver
    }

    /// Frequency of each block.
    pub fn frequencies(&self) -> &[f64] {
        &self.omega
    }

    /// The `ny × ny` block acting on frequency index `k`.
    pub fn block(&self, k: usize) -> &DMatrix<Complex64> {
        &self.blocks[k]
    }

    fn rows_forward(&self, values: &[Complex64]) -> Vec<Complex64> {
        let mut buf = values.to_vec();
        for row in buf.chunks_mut(self.grid.nx) {
            self.forward.process(row);
        }
        buf
    }

    /// Apply `π` to grid values.
    pub fn apply_values(&self, values: &[Complex64]) -> Vec<Complex64> {
        let nx = self.grid.nx;
        let ny = self.grid.ny;
        let spec = self.rows_forward(values);
        let cols: Vec<Vec<Complex64>> = (0..nx)
            .into_par_iter()
            .map(|k| {
                let v = DVector::from_iterator(ny, (0..ny).map(|j| spec[j * nx + k]));
                let out = &self.blocks[k] * v;
                out.iter().cloned().collect()
            })
            .collect();
        let mut out = vec![ZERO; nx * ny];
        for (k, col) in cols.iter().enumerate() {
            for (j, v) in col.iter().enumerate() {
                out[j * nx + k] = *v;
            }
        }
        let scale = 1.0 / nx as f64;
        for row in out.chunks_mut(nx) {
            self.inverse.process(row);
            for v in row.iter_mut() {
                *v *= scale;
            }
        }
        out
    }

    /// Apply `π` to a grid function.
    pub fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        self.check(f)?;
        Ok(GridFunction {
            grid: self.grid.clone(),
            values: self.apply_values(&f.values),
        })
    }

    fn check(&self, f: &GridFunction) -> Result<()> {
        if Arc::ptr_eq(&f.grid, &self.grid) || f.grid.same_shape(&self.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch("function and operator grids differ".into()))
        }
    }

    /// Evaluate `πf` at the listed nodes by restricting `f` to both circles
    /// through each node, projecting each restriction and averaging the two
    /// projections at the node.
    pub fn apply_pointwise(&self, f: &GridFunction, nodes: &[usize]) -> Result<Vec<Complex64>> {
        self.check(f)?;
        let nx = self.grid.nx;
        let ny = self.grid.ny;
        let spec = self.rows_forward(&f.values);
        let x0 = self.grid.x[0];
        let interp_row = |j: usize, x: f64| -> Complex64 {
            match self.interp {
                Interp::Spectral => {
                    let row = &spec[j * nx..(j + 1) * nx];
                    let mut acc = ZERO;
                    for (k, c) in row.iter().enumerate() {
                        let ph = self.omega[k] * (x - x0);
                        if nx.is_multiple_of(2) && k == nx / 2 {
                            acc += c * ph.cos();
                        } else {
                            acc += c * Complex64::from_polar(1.0, ph);
                        }
                    }
                    acc / nx as f64
                }
                Interp::Cubic => {
                    let s = (x - x0) / self.grid.dx;
                    let m0 = s.floor();
                    let l = lagrange4(s - m0);
                    let row = &f.values[j * nx..(j + 1) * nx];
                    l.iter()
                        .enumerate()
                        .map(|(o, w)| {
                            let idx = (m0 as i64 + o as i64 - 1).rem_euclid(nx as i64) as usize;
                            row[idx] * w
                        })
                        .sum()
                }
            }
        };
        nodes
            .par_iter()
            .map(|&idx| {
                let z = self.grid.point(idx);
                let (t1, t2) = tangent_centers(z)?;
                let mut acc = ZERO;
                for t in [t1, t2] {
                    let mut slice = self.slice.clone();
                    slice.t = t;
                    let samples: Vec<Complex64> = slice
                        .theta
                        .iter()
                        .enumerate()
                        .map(|(m, th)| {
                            let j = if m < ny { m } else { self.n_theta - 1 - m };
                            interp_row(j, t + th.cos())
                        })
                        .collect();
                    let coeffs = self.solver.project_boundary(&samples, &slice)?;
                    acc += crate::szego::evaluate_hardy(&coeffs, t, z)?;
                }
                Ok(0.5 * acc)
            })
            .collect()
    }

    /// Dense matrix whose column `j` is `π` applied to the `j`-th unit vector.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        let n = self.grid.len();
        if n > DENSE_NODE_LIMIT {
            return Err(Error::TooLarge {
                nodes: n,
                limit: DENSE_NODE_LIMIT,
            });
        }
        let cols: Vec<Vec<Complex64>> = (0..n)
            .into_par_iter()
            .map(|c| {
                let mut e = vec![ZERO; n];
                e[c] = Complex64::new(1.0, 0.0);
                self.apply_values(&e)
            })
            .collect();
        Ok(DMatrix::from_fn(n, n, |r, c| cols[c][r]))
    }

    /// Relative Frobenius asymmetry `‖W A − A^H W‖ / ‖W A‖` in the grid metric.
    pub fn asymmetry_defect(&self) -> f64 {
        let d = &self.grid.row_weights;
        let (num, den) = self
            .blocks
            .par_iter()
            .map(|a| {
                let ny = self.grid.ny;
                let mut num = 0.0;
                let mut den = 0.0;
                for r in 0..ny {
                    for c in 0..ny {
                        let wa = a[(r, c)] * d[r];
                        let aw = a[(c, r)].conj() * d[c];
                        num += (wa - aw).norm_sqr();
                        den += wa.norm_sqr();
                    }
                }
                (num, den)
            })
            .reduce(|| (0.0, 0.0), |x, y| (x.0 + y.0, x.1 + y.1));
        (num / den).sqrt()
    }

    /// `‖π(Pf) − P(πf)‖ / ‖f‖` for the reflection `P` of the chosen axis.
    pub fn parity_commutator(&self, f: &GridFunction, axis: Axis) -> Result<f64> {
        self.check(f)?;
        let pf = reflect(f, axis);
        let lhs = self.apply(&pf)?;
        let rhs = reflect(&self.apply(f)?, axis);
        Ok(lhs.sub(&rhs)?.norm() / f.norm())
    }
}

/// Reflection axis for parity commutators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// `x ↦ −x`.
    X,
    /// `y ↦ −y`.
    Y,
    /// `z ↦ −z`.
    Origin,
}

/// Reflect grid values across an axis (the grids are symmetric node for node).
pub fn reflect(f: &GridFunction, axis: Axis) -> GridFunction {
    let nx = f.grid.nx;
    let ny = f.grid.ny;
    let mut values = vec![ZERO; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let (si, sj) = match axis {
                Axis::X => (nx - 1 - i, j),
                Axis::Y => (i, ny - 1 - j),
                Axis::Origin => (nx - 1 - i, ny - 1 - j),
            };
            values[j * nx + i] = f.values[sj * nx + si];
        }
    }
    GridFunction {
        grid: f.grid.clone(),
        values,
    }
}

/// Weighted inner product `Σ w f conj(g)`.
pub fn strip_inner(f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    f.check_grid(g)?;
    Ok(f.values
        .iter()
        .zip(&g.values)
        .zip(&f.grid.quad_weights)
        .map(|((a, b), w)| a * b.conj() * w)
        .sum())
}

/// Weighted L² norm of the central-difference `∂f/∂z̄` on interior nodes,
/// divided by `‖f‖`.
pub fn cr_residual(f: &GridFunction) -> f64 {
    cr_residual_values(&f.grid, &f.values)
}

/// [`cr_residual`] on raw node values.
pub fn cr_residual_values(g: &StripGrid, values: &[Complex64]) -> f64 {
    let nx = g.nx;
    let mut acc = 0.0;
    let mut total = 0.0;
    for (v, w) in values.iter().zip(&g.quad_weights) {
        total += w * v.norm_sqr();
    }
    for j in 1..g.ny - 1 {
        let dy = g.y[j + 1] - g.y[j - 1];
        for i in 1..nx - 1 {
            let fx = (values[j * nx + i + 1] - values[j * nx + i - 1]) / (2.0 * g.dx);
            let fy = (values[(j + 1) * nx + i] - values[(j - 1) * nx + i]) / dy;
            let d = 0.5 * (fx + Complex64::i() * fy);
            acc += g.quad_weights[j * nx + i] * d.norm_sqr();
        }
    }
    if total == 0.0 {
        0.0
    } else {
        (acc / total).sqrt()
    }
}

/// `⟨f − L, h_j⟩` for each atom.
pub fn bergman_defect(
    f: &GridFunction,
    limit: &GridFunction,
    atoms: &[GridFunction],
) -> Result<Vec<Complex64>> {
    let r = f.sub(limit)?;
    atoms.iter().map(|h| strip_inner(&r, h)).collect()
}

/// `|⟨f − L, h_j⟩| / (‖f‖‖h_j‖)` for each atom.
pub fn bergman_defect_normalized(
    f: &GridFunction,
    limit: &GridFunction,
    atoms: &[GridFunction],
) -> Result<Vec<f64>> {
    let nf = f.norm();
    Ok(bergman_defect(f, limit, atoms)?
        .iter()
        .zip(atoms)
        .map(|(d, h)| d.norm() / (nf * h.norm()))
        .collect())
}

/// One eigenpair of the metric-symmetrised operator.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: GridFunction,
}

/// Eigenvalues and leading eigenpairs of the symmetrised `π`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// All eigenvalues, descending.
    pub values: Vec<f64>,
    /// The `k` leading eigenpairs.
    pub top: Vec<EigenPair>,
}

impl Spectrum {
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }
}

fn hermitian_part(s: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (s + s.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Spectrum of `W^{1/2} A W^{-1/2}` (Hermitian part) from the dense matrix.
pub fn spectrum_pi(op: &PiOperator, k: usize) -> Result<Spectrum> {
    let a = op.to_dense()?;
    let w = &op.grid.quad_weights;
    let n = w.len();
    let s = DMatrix::from_fn(n, n, |r, c| a[(r, c)] * (w[r] / w[c]).sqrt());
    let eig = SymmetricEigen::try_new(hermitian_part(&s), 1e-14, 10_000)
        .ok_or_else(|| Error::Numerical("dense eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let top = order
        .iter()
        .take(k)
        .map(|&i| {
            let values = (0..n)
                .map(|r| eig.eigenvectors[(r, i)] / w[r].sqrt())
                .collect();
            EigenPair {
                value: eig.eigenvalues[i],
                vector: GridFunction {
                    grid: op.grid.clone(),
                    values,
                },
            }
        })
        .collect();
    Ok(Spectrum { values, top })
}

/// Spectrum of the symmetrised `π` computed block by block.
///
/// Eigenvectors are `e^{iωx} v(y)`; this works at any grid size.
pub fn spectrum_blocks(op: &PiOperator, k: usize) -> Result<Spectrum> {
    let ny = op.grid.ny;
    let d = &op.grid.row_weights;
    let per_block: Vec<(usize, Vec<f64>, DMatrix<Complex64>)> = op
        .blocks
        .par_iter()
        .enumerate()
        .map(|(b, a)| {
            let s = DMatrix::from_fn(ny, ny, |r, c| a[(r, c)] * (d[r] / d[c]).sqrt());
            let eig = SymmetricEigen::new(hermitian_part(&s));
            (b, eig.eigenvalues.iter().cloned().collect(), eig.eigenvectors)
        })
        .collect();
    let mut all: Vec<(f64, usize, usize)> = Vec::with_capacity(op.grid.len());
    for (b, vals, _) in &per_block {
        for (i, v) in vals.iter().enumerate() {
            all.push((*v, *b, i));
        }
    }
    all.sort_by(|x, y| y.0.total_cmp(&x.0));
    let nx = op.grid.nx;
    let x0 = op.grid.x[0];
    let top = all
        .iter()
        .take(k)
        .map(|&(value, b, i)| {
            let vecs = &per_block[b].2;
            let omega = op.omega[b];
            let nyquist = nx.is_multiple_of(2) && b == nx / 2;
            let mut values = vec![ZERO; op.grid.len()];
            for j in 0..ny {
                let amp = vecs[(j, i)] / d[j].sqrt();
                for (ii, x) in op.grid.x.iter().enumerate() {
                    let ph = omega * (x - x0);
                    let wave = if nyquist {
                        Complex64::new(ph.cos(), 0.0)
                    } else {
                        Complex64::from_polar(1.0, ph)
                    };
                    values[j * nx + ii] = amp * wave;
                }
            }
            EigenPair {
                value,
                vector: GridFunction {
                    grid: op.grid.clone(),
                    values,
                },
            }
        })
        .collect();
    Ok(Spectrum {
        values: all.iter().map(|e| e.0).collect(),
        top,
    })
}

/// Power iteration for the largest-magnitude eigenvalue of the symmetrised
/// dense operator. Used as an independent check on small grids.
pub fn power_iteration(op: &PiOperator, iters: usize) -> Result<f64> {
    let a = op.to_dense()?;
    let w = &op.grid.quad_weights;
    let n = w.len();
    let s = hermitian_part(&DMatrix::from_fn(n, n, |r, c| a[(r, c)] * (w[r] / w[c]).sqrt()));
    let mut v = DVector::from_fn(n, |i, _| Complex64::new(1.0 + (i as f64 * 0.37).sin(), 0.1));
    let mut lambda = 0.0;
    for _ in 0..iters {
        let next = &s * &v;
        lambda = v.dotc(&next).re / v.dotc(&v).re;
        let norm = next.norm();
        if norm == 0.0 {
            return Ok(0.0);
        }
        v = next / Complex64::new(norm, 0.0);
    }
    Ok(lambda)
}
