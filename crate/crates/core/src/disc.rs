//! Planar analogue on `G = φ(D)`, `φ(z, w) = zw`, where
//! `D = {|z|² + |w|² − 1 + ε(zw + conj(zw)) < 0}`.
//!
//! Slicing `∂D` by `|w| = s` and pushing forward gives the circle
//! `|ζ − c(s)| = r(s)` with `c(s) = −εs²`, `r(s) = s√(1 − s² + ε²s²)`.
//! Every point of `G` lies on two such circles; averaging their unweighted
//! Szegő projections gives the operator `T`.
//!
//! The grid uses `s = s_max sin σ` with `σ` at cell midpoints of `(0, π/2)`
//! and `ψ` uniform. Then `r = (s_max/2) sin 2σ`, and `ζ(π − σ, ψ) = ζ(σ, ψ + π)`
//! extends data to a smooth `π`-periodic function of `σ`, which is
//! interpolated trigonometrically to reach the partner circle.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

/// Normalisation of the pushed-forward measure: `dω = κ s ds dψ`.
pub const KAPPA: f64 = 4.0 * PI;

/// Default exclusion threshold on the two-cover discriminant.
pub const DEFAULT_BAND: f64 = 1e-3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::Parameter(format!("eps must lie in [0, 1), got {eps}")));
    }
    Ok(())
}

/// Upper end `(1 − ε²)^{-1/2}` of the slice parameter.
pub fn s_max(eps: f64) -> f64 {
    1.0 / ((1.0 - eps) * (1.0 + eps)).sqrt()
}

/// Centre and radius of the circle with slice parameter `s`.
pub fn circle_of(s: f64, eps: f64) -> Result<(f64, f64)> {
    check_eps(eps)?;
    let sm = s_max(eps);
    if !(s > 0.0 && s < sm) {
        return Err(Error::Domain(format!("s = {s} is outside (0, {sm})")));
    }
    Ok((-eps * s * s, s * (1.0 - s * s + eps * eps * s * s).sqrt()))
}

/// Slice parameters `s1 < s2` of the two circles through `ζ`.
pub fn circles_through(zeta: Complex64, eps: f64) -> Result<(f64, f64)> {
    check_eps(eps)?;
    let b = 2.0 * eps * zeta.re - 1.0;
    let c = zeta.norm_sqr();
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        return Err(Error::Domain(format!("ζ = {zeta} lies outside G")));
    }
    if disc == 0.0 {
        return Err(Error::Domain(format!("ζ = {zeta} lies on the boundary of G")));
    }
    let sq = disc.sqrt();
    // stable roots of u² + b u + c = 0
    let big = if b <= 0.0 { (-b + sq) / 2.0 } else { (-b - sq) / 2.0 };
    let small = if big != 0.0 { c / big } else { 0.0 };
    let (u1, u2) = if small <= big { (small, big) } else { (big, small) };
    let top = s_max(eps).powi(2);
    if !(u1 > 0.0) || !(u2 < top) {
        return Err(Error::Domain(format!("ζ = {zeta} has slice roots outside (0, s_max²)")));
    }
    Ok((u1.sqrt(), u2.sqrt()))
}

/// Grid, metric and partner maps of one circle family.
pub struct DiscFamily {
    pub eps: f64,
    pub s_max: f64,
    pub ns: usize,
    pub npsi: usize,
    /// Szegő truncation degree on every circle.
    pub n: usize,
    pub sigma: Vec<f64>,
    pub s: Vec<f64>,
    pub psi: Vec<f64>,
    /// Node `a * npsi + b` is `(σ_a, ψ_b)`.
    pub zeta: Vec<Complex64>,
    pub weights: Vec<f64>,
    pub band: f64,
    /// `(u1 − u2)²` per node.
    pub discriminant: Vec<f64>,
    partner_psi: Vec<f64>,
    /// Cardinal functions of the extended σ-grid at each partner σ.
    partner_interp: DMatrix<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for DiscFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiscFamily")
            .field("eps", &self.eps)
            .field("ns", &self.ns)
            .field("npsi", &self.npsi)
            .field("n", &self.n)
            .finish()
    }
}

/// Periodic cardinal function of `2ns` equispaced nodes on a period `π`.
fn cardinal(n2: usize, d: f64) -> f64 {
    let sd = d.sin();
    if sd.abs() < 1e-12 {
        return 1.0;
    }
    (n2 as f64 * d).sin() * d.cos() / (n2 as f64 * sd)
}

impl DiscFamily {
    /// Build the `(σ, ψ)` grid; the Szegő degree is `npsi/2 − 1`.
    pub fn new(eps: f64, ns: usize, npsi: usize) -> Result<Self> {
        check_eps(eps)?;
        if ns < 4 || npsi < 8 || !npsi.is_multiple_of(2) {
            return Err(Error::Parameter(format!(
                "need ns >= 4 and even npsi >= 8, got {ns} and {npsi}"
            )));
        }
        let sm = s_max(eps);
        let dsig = 0.5 * PI / ns as f64;
        let dpsi = 2.0 * PI / npsi as f64;
        let sigma: Vec<f64> = (0..ns).map(|a| (a as f64 + 0.5) * dsig).collect();
        let s: Vec<f64> = sigma.iter().map(|g| sm * g.sin()).collect();
        let psi: Vec<f64> = (0..npsi).map(|b| b as f64 * dpsi).collect();
        let mut zeta = Vec::with_capacity(ns * npsi);
        let mut weights = Vec::with_capacity(ns * npsi);
        for (a, g) in sigma.iter().enumerate() {
            let c = -eps * s[a] * s[a];
            let r = 0.5 * sm * (2.0 * g).sin();
            let w = KAPPA * sm * sm * g.sin() * g.cos() * dsig * dpsi;
            for p in &psi {
                zeta.push(Complex64::new(c, 0.0) + Complex64::from_polar(r, *p));
                weights.push(w);
            }
        }
        let n2 = 2 * ns;
        let ext_sigma: Vec<f64> = (0..n2).map(|m| (m as f64 + 0.5) * dsig).collect();
        let mut partner_psi = Vec::with_capacity(ns * npsi);
        let mut partner_sigma = Vec::with_capacity(ns * npsi);
        let mut discriminant = Vec::with_capacity(ns * npsi);
        for (k, z) in zeta.iter().enumerate() {
            let u = s[k / npsi].powi(2);
            let up = z.norm_sqr() / u;
            let sp = up.sqrt();
            partner_sigma.push((sp / sm).min(1.0).asin());
            partner_psi.push((z + eps * up).arg());
            discriminant.push((u - up).powi(2));
        }
        let rows: Vec<Vec<f64>> = partner_sigma
            .par_iter()
            .map(|&sp| ext_sigma.iter().map(|&e| cardinal(n2, sp - e)).collect())
            .collect();
        let partner_interp = DMatrix::from_fn(ns * npsi, n2, |r, c| rows[r][c]);
        let mut planner = FftPlanner::new();
        Ok(Self {
            eps,
            s_max: sm,
            ns,
            npsi,
            n: npsi / 2 - 1,
            sigma,
            s,
            psi,
            zeta,
            weights,
            band: DEFAULT_BAND,
            discriminant,
            partner_psi,
            partner_interp,
            forward: planner.plan_fft_forward(npsi),
            inverse: planner.plan_fft_inverse(npsi),
        })
    }

    pub fn len(&self) -> usize {
        self.ns * self.npsi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sample a closed-form function of `ζ`.
    pub fn sample<F: Fn(Complex64) -> Complex64>(&self, f: F) -> DiscGridFunction {
        DiscGridFunction {
            ns: self.ns,
            npsi: self.npsi,
            values: self.zeta.iter().map(|z| f(*z)).collect(),
        }
    }

    fn check(&self, f: &DiscGridFunction) -> Result<()> {
        if f.ns != self.ns || f.npsi != self.npsi || f.values.len() != self.len() {
            return Err(Error::GridMismatch(format!(
                "function on a {}×{} grid, family is {}×{}",
                f.ns, f.npsi, self.ns, self.npsi
            )));
        }
        Ok(())
    }

    /// Fourier coefficients along `ψ` of each row (unnormalised).
    fn row_spectra(&self, values: &[Complex64]) -> Vec<Complex64> {
        let mut buf = values.to_vec();
        for row in buf.chunks_mut(self.npsi) {
            self.forward.process(row);
        }
        buf
    }

    /// Coefficients `m ∈ freqs` of the circle through each node's partner,
    /// interpolated in `σ`, evaluated at the partner angle.
    fn partner_eval(&self, spec: &[Complex64], freqs: &[i64]) -> Vec<Complex64> {
        let ns = self.ns;
        let np = self.npsi;
        let nf = freqs.len();
        let n2 = 2 * ns;
        // extended rows: row ns + a'' is row ns−1−a'' shifted by π
        let mut h = DMatrix::<f64>::zeros(n2, 2 * nf);
        for m in 0..n2 {
            let (src, flip) = if m < ns { (m, false) } else { (n2 - 1 - m, true) };
            for (col, &fq) in freqs.iter().enumerate() {
                let idx = fq.rem_euclid(np as i64) as usize;
                let mut v = spec[src * np + idx];
                if flip && fq % 2 != 0 {
                    v = -v;
                }
                h[(m, col)] = v.re;
                h[(m, nf + col)] = v.im;
            }
        }
        let coef = &self.partner_interp * h;
        let scale = 1.0 / np as f64;
        (0..self.len())
            .into_par_iter()
            .map(|k| {
                let base = Complex64::from_polar(1.0, self.partner_psi[k]);
                let mut acc = ZERO;
                for (col, &fq) in freqs.iter().enumerate() {
                    let c = Complex64::new(coef[(k, col)], coef[(k, nf + col)]);
                    acc += c * base.powi(fq as i32);
                }
                acc * scale
            })
            .collect()
    }

    /// Apply `T`: average of the Szegő projections on the two circles
    /// through each node.
    pub fn apply_values(&self, values: &[Complex64]) -> Vec<Complex64> {
        let np = self.npsi;
        let spec = self.row_spectra(values);
        let mut own = spec.clone();
        for row in own.chunks_mut(np) {
            for (m, v) in row.iter_mut().enumerate() {
                if m > self.n {
                    *v = ZERO;
                }
            }
            self.inverse.process(row);
        }
        let freqs: Vec<i64> = (0..=self.n as i64).collect();
        let partner = self.partner_eval(&spec, &freqs);
        let scale = 1.0 / np as f64;
        own.iter()
            .zip(&partner)
            .map(|(a, b)| 0.5 * (a * scale + b))
            .collect()
    }

    pub fn apply_t(&self, f: &DiscGridFunction) -> Result<DiscGridFunction> {
        self.check(f)?;
        Ok(DiscGridFunction {
            ns: self.ns,
            npsi: self.npsi,
            values: self.apply_values(&f.values),
        })
    }

    /// Largest difference between a node value and the interpolated value
    /// at the same point viewed on its partner circle.
    pub fn redundancy_mismatch(&self, f: &DiscGridFunction) -> Result<f64> {
        self.check(f)?;
        let half = self.npsi as i64 / 2;
        let freqs: Vec<i64> = (-half + 1..half).collect();
        let spec = self.row_spectra(&f.values);
        let partner = self.partner_eval(&spec, &freqs);
        Ok(partner
            .iter()
            .zip(&f.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Whether node `k` lies outside the boundary band.
    pub fn in_interior(&self, k: usize) -> bool {
        self.discriminant[k] >= self.band
    }

    /// Weighted L² norm of the difference-quotient `∂f/∂ζ̄` over rows away
    /// from the edges and nodes outside the boundary band, divided by `‖f‖`.
    pub fn cr_residual_values(&self, values: &[Complex64]) -> f64 {
        let np = self.npsi;
        let dsig = self.sigma[1] - self.sigma[0];
        let dpsi = 2.0 * PI / np as f64;
        let sm = self.s_max;
        let mut acc = 0.0;
        for a in 1..self.ns - 1 {
            let g = self.sigma[a];
            let dc = -self.eps * sm * sm * (2.0 * g).sin();
            let dr = sm * (2.0 * g).cos();
            let r = 0.5 * sm * (2.0 * g).sin();
            for b in 0..np {
                let k = a * np + b;
                if !self.in_interior(k) {
                    continue;
                }
                let e = Complex64::from_polar(1.0, self.psi[b]);
                let z_s = dc + dr * e;
                let z_p = Complex64::i() * r * e;
                let f_s = (values[k + np] - values[k - np]) / (2.0 * dsig);
                let f_p = (values[a * np + (b + 1) % np] - values[a * np + (b + np - 1) % np])
                    / (2.0 * dpsi);
                let den = z_p * z_s.conj() - z_s * z_p.conj();
                let d = (z_p * f_s - z_s * f_p) / den;
                acc += self.weights[k] * d.norm_sqr();
            }
        }
        let n = norm_values(values, &self.weights);
        if n == 0.0 {
            0.0
        } else {
            acc.sqrt() / n
        }
    }

    pub fn cr_residual(&self, f: &DiscGridFunction) -> f64 {
        self.cr_residual_values(&f.values)
    }
}

fn norm_values(v: &[Complex64], w: &[f64]) -> f64 {
    v.iter().zip(w).map(|(a, b)| b * a.norm_sqr()).sum::<f64>().sqrt()
}

/// Values on a [`DiscFamily`] grid. Each point of `G` is stored at two nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscGridFunction {
    pub ns: usize,
    pub npsi: usize,
    pub values: Vec<Complex64>,
}

impl DiscGridFunction {
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.values.len() != other.values.len() {
            return Err(Error::GridMismatch("disc functions differ in size".into()));
        }
        Ok(Self {
            ns: self.ns,
            npsi: self.npsi,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }
}

/// `κ Σ f conj(g) s Δs Δψ` over the family grid.
pub fn disc_inner(f: &DiscGridFunction, g: &DiscGridFunction, family: &DiscFamily) -> Result<Complex64> {
    family.check(f)?;
    family.check(g)?;
    Ok(f.values
        .iter()
        .zip(&g.values)
        .zip(&family.weights)
        .map(|((a, b), w)| a * b.conj() * w)
        .sum())
}

pub fn disc_norm(f: &DiscGridFunction, family: &DiscFamily) -> Result<f64> {
    Ok(disc_inner(f, f, family)?.re.sqrt())
}

/// Monte Carlo estimate of `∫_{∂D} F dV` for `F(z, w) = f(zw)`.
///
/// Uses `dρ ∧ dV = 4 dVol`: along a ray `r ω` from the origin `ρ = r² Q(ω) − 1`,
/// so `∫_{∂D} F dV = ∫_{S³} 2 F(ω/√Q) / Q² dσ(ω)`, sampled with uniform
/// directions. Returns the estimate and its standard error.
pub fn monte_carlo_boundary_integral<F, R>(f: F, eps: f64, samples: usize, rng: &mut R) -> Result<(f64, f64)>
where
    F: Fn(Complex64) -> f64,
    R: Rng,
{
    check_eps(eps)?;
    if samples < 2 {
        return Err(Error::Parameter("need at least two samples".into()));
    }
    let area = 2.0 * PI * PI;
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    for _ in 0..samples {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let z = Complex64::new(v[0] / n, v[1] / n);
        let w = Complex64::new(v[2] / n, v[3] / n);
        let zw = z * w;
        let q = 1.0 + 2.0 * eps * zw.re;
        let val = 2.0 * f(zw / q) / (q * q) * area;
        sum += val;
        sum2 += val * val;
    }
    let m = sum / samples as f64;
    let var = (sum2 / samples as f64 - m * m).max(0.0);
    Ok((m, (var / samples as f64).sqrt()))
}
