//! Boundary integrals of negative powers of the distance to a circle, and
//! least-squares extraction of their power-law exponent as `t → 0`.

use crate::error::{Error, Result};
use crate::quad::tanh_sinh;
use serde::Serialize;

const REL_TOL: f64 = 1e-11;

/// `∫ dist(z, ∂G)^{-1/p} dx` along the chord `Im z = t` of the unit disc
/// `G` centred at `i`.
pub fn lemma1_integral(p: f64, t: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Parameter(format!("p must exceed 1, got {p}")));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Parameter(format!("t must lie in (0, 1), got {t}")));
    }
    let a = (t * (2.0 - t)).sqrt();
    let q = 1.0 - t;
    // 1 − |z − i| = (a − x)(a + x) / (1 + |z − i|)
    let est = tanh_sinh(-a, a, REL_TOL, |x, da, db| {
        let r = (x * x + q * q).sqrt();
        (da * db / (1.0 + r)).powf(-1.0 / p)
    });
    Ok(est.value)
}

/// `∫_0^{√t} (x² + t²)^{β/(2p)} / (t^{1/(2p)} (√t − x)^{1/p}) dx`.
pub fn weighted_edge_integral(p: f64, beta: f64, t: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Parameter(format!("p must exceed 1, got {p}")));
    }
    if !(0.0..0.5).contains(&beta) {
        return Err(Error::Parameter(format!("beta must lie in [0, 1/2), got {beta}")));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Parameter(format!("t must lie in (0, 1), got {t}")));
    }
    let st = t.sqrt();
    let pre = t.powf(-1.0 / (2.0 * p));
    let est = tanh_sinh(0.0, st, REL_TOL, |x, _, db| {
        pre * (x * x + t * t).powf(beta / (2.0 * p)) * db.powf(-1.0 / p)
    });
    Ok(est.value)
}

/// Exponent `1/2 + β/(2p) − 1/p` of the edge-integral bound.
pub fn predicted_slope(p: f64, beta: f64) -> f64 {
    0.5 + beta / (2.0 * p) - 1.0 / p
}

/// `n` geometrically spaced values from `lo` to `hi`.
pub fn t_ladder(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Least-squares slope of `log v` against `log t`.
pub fn fit_slope(ts: &[f64], vals: &[f64]) -> Result<f64> {
    if ts.len() != vals.len() || ts.len() < 2 {
        return Err(Error::Parameter("need at least two matching samples".into()));
    }
    if vals.iter().chain(ts).any(|v| !(*v > 0.0)) {
        return Err(Error::Numerical("log-log fit needs positive data".into()));
    }
    let lx: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ly: Vec<f64> = vals.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Which integral a lattice row uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Chord,
    Edge,
}

/// Fitted exponent at one lattice point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub kind: EstimateKind,
    pub p: f64,
    pub beta: f64,
    pub ts: Vec<f64>,
    pub values: Vec<f64>,
    pub fitted: f64,
    pub predicted: f64,
}

impl SlopeFit {
    pub fn error(&self) -> f64 {
        (self.fitted - self.predicted).abs()
    }

    /// Values shrink monotonically as `t` decreases.
    pub fn decays(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// Values grow monotonically as `t` decreases.
    pub fn diverges(&self) -> bool {
        self.values.windows(2).all(|w| w[0] > w[1])
    }
}

/// Evaluate one integral on a ladder and fit its exponent.
pub fn fit_lattice_point(kind: EstimateKind, p: f64, beta: f64, ts: &[f64]) -> Result<SlopeFit> {
    let values = ts
        .iter()
        .map(|&t| match kind {
            EstimateKind::Chord => lemma1_integral(p, t),
            EstimateKind::Edge => weighted_edge_integral(p, beta, t),
        })
        .collect::<Result<Vec<_>>>()?;
    let fitted = fit_slope(ts, &values)?;
    Ok(SlopeFit {
        kind,
        p,
        beta,
        ts: ts.to_vec(),
        values,
        fitted,
        predicted: predicted_slope(p, beta),
    })
}
