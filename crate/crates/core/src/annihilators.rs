//! Strip annihilators `h̃(z) = h(t1, z) + h(t2, z)` built from per-circle
//! data vanishing at the circle centre, and their bilinear pairing with
//! functions on the strip.

use crate::error::{Error, Result};
use crate::geometry::{tangent_centers, GridFunction, StripGrid};
use crate::quad::gauss_legendre;
use num_complex::Complex64;
use serde::Serialize;
use std::sync::Arc;

/// Profile `φ(t) = amplitude · exp(-(t - center)² / width)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Profile {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

impl Profile {
    pub fn gaussian(center: f64, width: f64) -> Self {
        Self {
            amplitude: 1.0,
            center,
            width,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if self.amplitude == 0.0 {
            return 0.0;
        }
        let d = t - self.center;
        self.amplitude * (-d * d / self.width).exp()
    }
}

/// Separable circle data `h(t, θ) = φ(t) e^{ikθ}` with `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnihilatorSpec {
    pub phi: Profile,
    pub k: u32,
}

impl AnnihilatorSpec {
    pub fn new(phi: Profile, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter(
                "frequency k must be at least 1 so the circle data vanish at the centre".into(),
            ));
        }
        Ok(Self { phi, k })
    }

    /// `h(t, z)` for a point `z` on `C_t`, with `θ = arg(z − t)`.
    pub fn eval(&self, t: f64, z: Complex64) -> Complex64 {
        let theta = (z - t).arg();
        Complex64::from_polar(self.phi.eval(t), self.k as f64 * theta)
    }
}

/// The two annihilators of the standard battery.
pub fn standard_annihilators() -> Vec<AnnihilatorSpec> {
    vec![
        AnnihilatorSpec {
            phi: Profile::gaussian(0.0, 1.0),
            k: 1,
        },
        AnnihilatorSpec {
            phi: Profile::gaussian(0.5, 0.8),
            k: 2,
        },
    ]
}

fn require_half(grid: &StripGrid) -> Result<()> {
    if (grid.alpha - 0.5).abs() > 1e-15 {
        return Err(Error::Config(format!(
            "the annihilator pairing uses the weight exponent 1/2, grid has alpha = {}",
            grid.alpha
        )));
    }
    Ok(())
}

/// `h̃(z)` evaluated at a point of the strip.
pub fn annihilator_at(spec: &AnnihilatorSpec, z: Complex64) -> Result<Complex64> {
    let (t1, t2) = tangent_centers(z)?;
    Ok(spec.eval(t1, z) + spec.eval(t2, z))
}

/// Sample `h̃` on a grid with `alpha = 1/2`.
pub fn make_annihilator(spec: &AnnihilatorSpec, grid: Arc<StripGrid>) -> Result<GridFunction> {
    require_half(&grid)?;
    let values = (0..grid.len())
        .map(|k| annihilator_at(spec, grid.point(k)))
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(grid, values)
}

/// Bilinear pairing `∫_S f h̃ dx dy / √(1 − y²)` (no conjugation).
pub fn annihilation_pairing(f: &GridFunction, h: &GridFunction) -> Result<Complex64> {
    require_half(&f.grid)?;
    f.check_grid(h)?;
    Ok(f.values
        .iter()
        .zip(&h.values)
        .zip(&f.grid.quad_weights)
        .map(|((a, b), w)| a * b * w)
        .sum())
}

/// `|pairing| / (‖f‖ ‖h̃‖)`.
pub fn normalized_pairing(f: &GridFunction, h: &GridFunction) -> Result<f64> {
    let p = annihilation_pairing(f, h)?;
    let scale = f.norm() * h.norm();
    Ok(if scale > 0.0 { p.norm() / scale } else { 0.0 })
}

/// The same pairing written circle by circle:
/// `∫ dt ∫_{C_t} f(t + e^{iθ}) h(t, θ) dθ` over `|t| <= t_max`.
///
/// Gauss–Legendre panels in `t`, the periodic trapezoid rule with `n_theta`
/// nodes in `θ`.
pub fn nested_pairing<F>(f: F, spec: &AnnihilatorSpec, t_max: f64, n_theta: usize) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let rule = gauss_legendre(16);
    let panels = (2.0 * t_max / 0.25).ceil() as usize;
    let width = 2.0 * t_max / panels as f64;
    let h = 2.0 * std::f64::consts::PI / n_theta as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let a = -t_max + p as f64 * width;
        acc += rule.integrate(a, a + width, |t| {
            let mut s = Complex64::new(0.0, 0.0);
            for m in 0..n_theta {
                let th = (m as f64 + 0.5) * h;
                let z = Complex64::new(t + th.cos(), th.sin());
                s += f(z) * Complex64::from_polar(spec.phi.eval(t), spec.k as f64 * th);
            }
            s * h
        });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_strip_grid;

    #[test]
    fn hand_values_at_origin() {
        let phi = Profile::gaussian(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        let h1 = annihilator_at(&AnnihilatorSpec::new(phi, 1).unwrap(), z).unwrap();
        assert!(h1.norm() < 1e-16);
        let h2 = annihilator_at(&AnnihilatorSpec::new(phi, 2).unwrap(), z).unwrap();
        assert!((h2 - Complex64::new(2.0 * (-1.0f64).exp(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_frequency_rejected() {
        assert!(AnnihilatorSpec::new(Profile::gaussian(0.0, 1.0), 0).is_err());
    }

    #[test]
    fn weight_exponent_enforced() {
        let g = Arc::new(build_strip_grid(1.0, 2.0, 8, 8, 0.75).unwrap());
        let spec = standard_annihilators()[0];
        assert!(matches!(make_annihilator(&spec, g), Err(Error::Config(_))));
    }
}
