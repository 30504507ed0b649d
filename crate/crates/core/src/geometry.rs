//! The strip `|Im z| < 1`, its unit circles `C_t` centred on the real axis,
//! the weighted area measure and the coarea identity tying them together.

use crate::error::{Error, Result};
use crate::quad::{gauss_jacobi, gauss_legendre};
use crate::szego::weight_moments;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

/// Centres of the two unit circles through `z`, ordered `t1 < t2`.
pub fn tangent_centers(z: Complex64) -> Result<(f64, f64)> {
    if !(z.im.abs() < 1.0) || !z.re.is_finite() {
        return Err(Error::Domain(format!(
            "point {z} is not inside the open strip |Im z| < 1"
        )));
    }
    let h = ((1.0 - z.im) * (1.0 + z.im)).sqrt();
    Ok((z.re - h, z.re + h))
}

/// Density of the coarea identity for the circle family. Identically one.
pub fn lambda_factor(y: f64) -> Result<f64> {
    if !(y.abs() < 1.0) {
        return Err(Error::Domain(format!("|y| = {} is not below 1", y.abs())));
    }
    Ok(1.0)
}

/// Angles `-π/2 + (m + 1/2)·2π/n`, `m = 0..n`.
///
/// The first half maps onto the strip rows under `y = sin θ`; node
/// `n - 1 - m` is the mirror `π - θ_m` of node `m`. No node equals `±π/2`.
pub fn fold_angles(n: usize) -> Vec<f64> {
    (0..n)
        .map(|m| -0.5 * PI + (m as f64 + 0.5) * 2.0 * PI / n as f64)
        .collect()
}

/// Interpolatory weights on equispaced angles for `∫ g(θ) |cos θ|^{-2β} dθ`.
///
/// Exact for trigonometric polynomials of degree below `n/2`; `moments[k]`
/// must hold `c_k` for `k <= n/2`.
pub fn product_weights(theta: &[f64], moments: &[f64], n: usize) -> Vec<f64> {
    let half = n / 2;
    assert!(moments.len() > half);
    theta
        .iter()
        .map(|&th| {
            let mut acc = moments[0];
            let top = if n.is_multiple_of(2) { half } else { half + 1 };
            for m in 1..top {
                if moments[m] != 0.0 {
                    acc += 2.0 * moments[m] * (m as f64 * th).cos();
                }
            }
            if n.is_multiple_of(2) {
                acc += moments[half] * (half as f64 * th).cos();
            }
            acc / n as f64
        })
        .collect()
}

/// Which rule produced the angular weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightRule {
    /// Interpolatory trigonometric product weights, exact below degree `n/2`.
    Trigonometric,
    /// Product weights of piecewise-linear interpolation: positive for every
    /// `β < 1/2`, exact for constants, second order otherwise.
    PiecewiseLinear,
}

const HAT_POINTS: usize = 24;

/// `∫ |cos θ|^{-2β} hat_k(θ) dθ` for the hat functions of the equispaced
/// angles `theta` with spacing `2π/n`.
pub fn hat_weights(theta: &[f64], beta: f64, n: usize) -> Vec<f64> {
    let h = 2.0 * PI / n as f64;
    let gl = gauss_legendre(HAT_POINTS);
    let left = gauss_jacobi(HAT_POINTS, 0.0, -2.0 * beta);
    let right = gauss_jacobi(HAT_POINTS, -2.0 * beta, 0.0);
    // |cos θ| = |sin(θ - s)| for any pole s = π/2 + jπ
    let pole_near = |th: f64| ((th - 0.5 * PI) / PI).round() * PI + 0.5 * PI;
    let weight = |th: f64| {
        let d = th - pole_near(th);
        d.sin().abs().powf(-2.0 * beta)
    };
    theta
        .iter()
        .map(|&tk| {
            let hat = |th: f64| (1.0 - (th - tk).abs() / h).max(0.0);
            let mut cuts = vec![tk - h, tk, tk + h];
            let first = ((tk - h - 0.5 * PI) / PI).ceil() as i64;
            let last = ((tk + h - 0.5 * PI) / PI).floor() as i64;
            let poles: Vec<f64> = (first..=last).map(|j| 0.5 * PI + j as f64 * PI).collect();
            cuts.extend(poles.iter().copied().filter(|p| *p > tk - h && *p < tk + h));
            cuts.sort_by(|a, b| a.total_cmp(b));
            cuts.dedup();
            let mut acc = 0.0;
            for w in cuts.windows(2) {
                let (a, b) = (w[0], w[1]);
                let half = 0.5 * (b - a);
                let at_a = poles.iter().any(|p| (p - a).abs() < 1e-14);
                let at_b = poles.iter().any(|p| (p - b).abs() < 1e-14);
                if at_a || at_b {
                    // d^{-2β} absorbed by the Jacobi weight, d = distance to the pole
                    let rule = if at_a { &left } else { &right };
                    let scale = half.powf(1.0 - 2.0 * beta);
                    for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
                        let th = a + half * (x + 1.0);
                        let d = if at_a { th - a } else { b - th };
                        let ratio = if d > 0.0 { (d.sin() / d).powf(-2.0 * beta) } else { 1.0 };
                        acc += wt * scale * ratio * hat(th);
                    }
                } else {
                    acc += gl.integrate(a, b, |th| weight(th) * hat(th));
                }
            }
            acc
        })
        .collect()
}

/// Positive weights for `∫ g(θ) |cos θ|^{-2β} dθ` on [`fold_angles`]`(n)`.
///
/// The trigonometric product weights are used when all of them are
/// positive; past `β ≈ 1/3` they develop negative lobes next to the poles
/// and the piecewise-linear product weights are used instead.
pub fn angular_weights(beta: f64, n: usize) -> Result<(Vec<f64>, WeightRule)> {
    let theta = fold_angles(n);
    let moments = weight_moments(beta, n / 2 + 1)?;
    let q = product_weights(&theta, &moments, n);
    if q.iter().all(|w| *w > 0.0 && w.is_finite()) {
        return Ok((q, WeightRule::Trigonometric));
    }
    let q = hat_weights(&theta, beta, n);
    if let Some(bad) = q.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
        return Err(Error::Numerical(format!("non-positive angular weight {bad:e}")));
    }
    Ok((q, WeightRule::PiecewiseLinear))
}

/// Truncated, padded discretisation of the strip.
///
/// Nodes are stored row by row: index `j * nx + i` is `(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StripGrid {
    pub m: f64,
    pub pad: f64,
    pub nx: usize,
    pub ny: usize,
    pub alpha: f64,
    pub dx: f64,
    pub x: Vec<f64>,
    pub phi: Vec<f64>,
    pub y: Vec<f64>,
    /// Weight of each row for `∫ (1-y²)^{-α} dy`, λ included.
    pub row_weights: Vec<f64>,
    pub quad_weights: Vec<f64>,
    pub weight_rule: WeightRule,
}

/// Build the grid on `[-M-pad, M+pad] × (-1, 1)`.
///
/// `x` uses cell midpoints (the grid is periodic with period `2(M+pad)`);
/// `y = sin φ` with `φ` at cell midpoints of `(-π/2, π/2)`. The `φ`-weights
/// for `cos^{1-2α} φ` are the right half of [`angular_weights`]`(β, 2 ny)`,
/// exact for trigonometric polynomials of degree below `ny` whenever that
/// rule is [`WeightRule::Trigonometric`].
pub fn build_strip_grid(m: f64, pad: f64, nx: usize, ny: usize, alpha: f64) -> Result<StripGrid> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::Parameter(format!("M must be positive, got {m}")));
    }
    if !(pad >= 2.0) || !pad.is_finite() {
        return Err(Error::Parameter(format!("pad must be at least 2, got {pad}")));
    }
    if nx < 4 || ny < 4 {
        return Err(Error::Parameter(format!(
            "nx and ny must be at least 4, got {nx} and {ny}"
        )));
    }
    if !(0.5..1.0).contains(&alpha) {
        return Err(Error::Parameter(format!(
            "alpha must lie in [1/2, 1), got {alpha}"
        )));
    }
    let beta = alpha - 0.5;
    let half_len = m + pad;
    let dx = 2.0 * half_len / nx as f64;
    let x: Vec<f64> = (0..nx).map(|i| -half_len + (i as f64 + 0.5) * dx).collect();
    let theta = fold_angles(2 * ny);
    let phi = theta[..ny].to_vec();
    let y: Vec<f64> = phi.iter().map(|p| p.sin()).collect();
    let (circle, weight_rule) = angular_weights(beta, 2 * ny)?;
    let mut row_weights = circle[..ny].to_vec();
    for (w, &yy) in row_weights.iter_mut().zip(&y) {
        *w *= lambda_factor(yy)?;
    }
    // mirror pairs share a weight exactly
    for j in 0..ny / 2 {
        let avg = 0.5 * (row_weights[j] + row_weights[ny - 1 - j]);
        row_weights[j] = avg;
        row_weights[ny - 1 - j] = avg;
    }
    if let Some(bad) = row_weights.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
        return Err(Error::Numerical(format!(
            "non-positive row weight {bad:e}; increase ny"
        )));
    }
    let mut quad_weights = Vec::with_capacity(nx * ny);
    for w in &row_weights {
        quad_weights.extend(std::iter::repeat_n(w * dx, nx));
    }
    Ok(StripGrid {
        m,
        pad,
        nx,
        ny,
        alpha,
        dx,
        x,
        phi,
        y,
        row_weights,
        quad_weights,
        weight_rule,
    })
}

impl StripGrid {
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn beta(&self) -> f64 {
        self.alpha - 0.5
    }

    /// Half-length of the padded x-interval.
    pub fn half_length(&self) -> f64 {
        self.m + self.pad
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Node `(x, y)` as a complex point.
    pub fn point(&self, idx: usize) -> Complex64 {
        Complex64::new(self.x[idx % self.nx], self.y[idx / self.nx])
    }

    pub fn nodes(&self) -> Vec<(f64, f64)> {
        (0..self.len())
            .map(|k| (self.x[k % self.nx], self.y[k / self.nx]))
            .collect()
    }

    /// Whether node `idx` lies in the reported window `|x| <= M`.
    pub fn is_reported(&self, idx: usize) -> bool {
        self.x[idx % self.nx].abs() <= self.m
    }

    pub fn same_shape(&self, other: &StripGrid) -> bool {
        self == other
    }
}

/// Complex samples on the nodes of a [`StripGrid`].
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub grid: Arc<StripGrid>,
    pub values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: Arc<StripGrid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("non-finite grid value".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Arc<StripGrid>) -> Self {
        let n = grid.len();
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn sample<F: Fn(Complex64) -> Complex64>(grid: Arc<StripGrid>, f: F) -> Self {
        let values = (0..grid.len()).map(|k| f(grid.point(k))).collect();
        Self { grid, values }
    }

    pub fn norm(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.grid.quad_weights)
            .map(|(v, w)| w * v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Fraction of the squared norm carried by the padding `|x| > M`.
    pub fn truncated_mass(&self) -> f64 {
        let mut outside = 0.0;
        let mut total = 0.0;
        for (k, (v, w)) in self.values.iter().zip(&self.grid.quad_weights).enumerate() {
            let e = w * v.norm_sqr();
            total += e;
            if !self.grid.is_reported(k) {
                outside += e;
            }
        }
        if total > 0.0 {
            outside / total
        } else {
            0.0
        }
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * a).collect(),
        }
    }

    pub fn add(&self, other: &GridFunction) -> Result<Self> {
        self.check_grid(other)?;
        Ok(Self {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &GridFunction) -> Result<Self> {
        self.check_grid(other)?;
        Ok(Self {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn check_grid(&self, other: &GridFunction) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || self.grid.same_shape(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch("functions live on different grids".into()))
        }
    }
}

/// One circle `C_t` with angle nodes and weighted arc-length quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSlice {
    pub t: f64,
    pub beta: f64,
    pub n_theta: usize,
    pub theta: Vec<f64>,
    /// `|cos θ_j|^{-2β}`.
    pub boundary_weight: Vec<f64>,
    /// Weights for `∫_{C_t} g ds / (1-y²)^β`.
    pub quad: Vec<f64>,
    pub rule: WeightRule,
}

/// Equispaced angle nodes on `C_t` (see [`fold_angles`]) with positive
/// weights for the boundary measure (see [`angular_weights`]).
pub fn circle_nodes(t: f64, n_theta: usize, beta: f64) -> Result<CircleSlice> {
    if n_theta < 8 {
        return Err(Error::Parameter(format!("n_theta must be at least 8, got {n_theta}")));
    }
    if !(0.0..0.5).contains(&beta) {
        return Err(Error::Parameter(format!("beta must lie in [0, 1/2), got {beta}")));
    }
    let theta = fold_angles(n_theta);
    if let Some(th) = theta.iter().find(|th| th.cos().abs() < 1e-14) {
        return Err(Error::Domain(format!("angle node {th} hits the weight singularity")));
    }
    let (quad, rule) = angular_weights(beta, n_theta)?;
    let boundary_weight = theta.iter().map(|th| th.cos().abs().powf(-2.0 * beta)).collect();
    Ok(CircleSlice {
        t,
        beta,
        n_theta,
        theta,
        boundary_weight,
        quad,
        rule,
    })
}

impl CircleSlice {
    /// Points `t + e^{iθ_j}`.
    pub fn points(&self) -> Vec<Complex64> {
        self.theta
            .iter()
            .map(|th| Complex64::new(self.t + th.cos(), th.sin()))
            .collect()
    }
}

/// Both sides of the coarea identity and their difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoareaCheck {
    /// Grid quadrature of `f` against the strip measure.
    pub area: f64,
    /// Nested quadrature `∫ dt ∫_{C_t^+} f ds/(1-y²)^β`.
    pub nested: f64,
    pub residual: f64,
    /// Residual divided by the grid integral of `|f|`.
    pub relative: f64,
    /// Share of `|f|` on the grid carried by `|x| > M`.
    pub truncated_mass: f64,
}

/// Compare the strip integral of `f` on the grid with the integral over
/// centres `t` of its integrals along the right half-circles `C_t^+`.
///
/// The strip side uses the grid's own weights. The circle side is an
/// independent Gauss rule: Gauss–Legendre panels in `t` and a Gauss–Jacobi
/// rule of `n_theta / 2` nodes on each half-circle. `f` must be real valued
/// and negligible near `|x| = M + pad`.
pub fn verify_coarea<F>(grid: &StripGrid, f: F, n_theta: usize) -> Result<CoareaCheck>
where
    F: Fn(Complex64) -> f64,
{
    if n_theta < 8 {
        return Err(Error::Parameter(format!("n_theta must be at least 8, got {n_theta}")));
    }
    let mut area = 0.0;
    let mut abs_total = 0.0;
    let mut abs_out = 0.0;
    for k in 0..grid.len() {
        let z = grid.point(k);
        let v = f(z) * grid.quad_weights[k];
        area += v;
        abs_total += v.abs();
        if !grid.is_reported(k) {
            abs_out += v.abs();
        }
    }
    let beta = grid.beta();
    let half = n_theta / 2;
    // θ = (π/2) u, |cos θ|^{-2β} = (1-u²)^{-2β} · smooth
    let rule = gauss_jacobi(half, -2.0 * beta, -2.0 * beta);
    let arc: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&u, &w)| {
            let th = 0.5 * PI * u;
            let smooth = if beta == 0.0 {
                1.0
            } else {
                (th.cos() / ((1.0 - u) * (1.0 + u))).powf(-2.0 * beta)
            };
            (th, 0.5 * PI * w * smooth)
        })
        .collect();
    let l = grid.half_length();
    let panel = gauss_legendre(16);
    let panels = ((2.0 * l + 1.0) / 0.25).ceil() as usize;
    let width = (2.0 * l + 1.0) / panels as f64;
    let mut nested = 0.0;
    for p in 0..panels {
        let a = -l - 1.0 + p as f64 * width;
        nested += panel.integrate(a, a + width, |t| {
            let mut s = 0.0;
            for &(th, w) in &arc {
                s += w * f(Complex64::new(t + th.cos(), th.sin()));
            }
            s
        });
    }
    let residual = (area - nested).abs();
    let scale = abs_total;
    Ok(CoareaCheck {
        area,
        nested,
        residual,
        relative: if scale > 0.0 { residual / scale } else { 0.0 },
        truncated_mass: if abs_total > 0.0 { abs_out / abs_total } else { 0.0 },
    })
}
