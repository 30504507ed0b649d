//! Quadrature rules shared by the geometry, moment and estimate code.
//!
//! Gauss–Legendre and Gauss–Jacobi tables are built on demand (Newton for
//! Legendre, Golub–Welsch for Jacobi). The double-exponential rule handles
//! integrable endpoint singularities without knowing their exponent.

use nalgebra::{DMatrix, SymmetricEigen};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function (Lanczos approximation, reflection below 1/2).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = LANCZOS[0];
        let t = x + LANCZOS_G + 0.5;
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

/// Natural log of |Γ(x)| for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut a = LANCZOS[0];
        let t = x + LANCZOS_G + 0.5;
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
    }
}

/// A quadrature rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// Integrate `f` over [a, b] with the rule mapped affinely.
    pub fn integrate<T, F>(&self, a: f64, b: f64, mut f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc
    }
}

/// n-point Gauss–Legendre rule.
pub fn gauss_legendre(n: usize) -> Rule {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// n-point Gauss–Jacobi rule for the weight (1-x)^a (1+x)^b on [-1, 1],
/// a, b > -1, via the Golub–Welsch eigenvalue problem.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Rule {
    assert!(n >= 1 && a > -1.0 && b > -1.0);
    let ab = a + b;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    for (k, d) in diag.iter_mut().enumerate() {
        let kf = k as f64;
        *d = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
    }
    for (i, o) in off.iter_mut().enumerate() {
        let k = (i + 1) as f64;
        let beta = if i == 0 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * k * (k + a) * (k + b) * (k + ab)
                / ((2.0 * k + ab).powi(2) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0))
        };
        *o = beta.sqrt();
    }
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jm[(k, k)] = diag[k];
        if k + 1 < n {
            jm[(k, k + 1)] = off[k];
            jm[(k + 1, k)] = off[k];
        }
    }
    let mu0 = (2f64).powf(ab + 1.0)
        * (ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(ab + 2.0)).exp();
    let eig = SymmetricEigen::new(jm);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], mu0 * eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub levels: usize,
}

/// Adaptive tanh–sinh integration of `f` over [a, b].
///
/// `f` receives `(x, x - a, b - x)` so integrands singular at an endpoint
/// can use the exact distance instead of a cancelling difference.
pub fn tanh_sinh<F>(a: f64, b: f64, rel_tol: f64, mut f: F) -> Estimate
where
    F: FnMut(f64, f64, f64) -> f64,
{
    let half = 0.5 * (b - a);
    let t_max = 6.5;
    let mut eval = |t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let du = 0.5 * PI * t.cosh();
        // 1 - tanh(u) and 1 + tanh(u) without cancellation
        let e = (-2.0 * u.abs()).exp();
        let small = 2.0 * e / (1.0 + e);
        let (da, db) = if u >= 0.0 {
            (half * (2.0 - small), half * small)
        } else {
            (half * small, half * (2.0 - small))
        };
        if da <= 0.0 || db <= 0.0 {
            return 0.0;
        }
        let x = if u >= 0.0 { b - db } else { a + da };
        let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
        let w = half * du * sech2;
        if w == 0.0 {
            return 0.0;
        }
        let v = f(x, da, db);
        if v.is_finite() {
            v * w
        } else {
            0.0
        }
    };
    let mut h = 1.0;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= t_max {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut prev = sum * h;
    let mut error = f64::INFINITY;
    let mut levels = 0;
    for level in 1..=12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= t_max {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let cur = sum * h;
        error = (cur - prev).abs();
        levels = level;
        prev = cur;
        if level >= 3 && error <= rel_tol * cur.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Estimate {
        value: prev,
        error,
        levels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_known_values() {
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-13);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-12);
        assert!((ln_gamma(10.0) - 362_880f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(12);
        let v: f64 = r.integrate(0.0, 2.0, |x: f64| x.powi(23));
        assert!((v - 2f64.powi(24) / 24.0).abs() / v < 1e-13);
    }

    #[test]
    fn jacobi_weight_moments() {
        // ∫_{-1}^{1} (1-x)^{-1/2}(1+x)^{-1/2} x^2 dx = π/2
        let r = gauss_jacobi(10, -0.5, -0.5);
        let v: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x * x).sum();
        assert!((v - PI / 2.0).abs() < 1e-13);
        // ∫ (1+x)^{-0.3} dx = 2^{0.7}/0.7
        let r = gauss_jacobi(8, 0.0, -0.3);
        let v: f64 = r.weights.iter().sum();
        assert!((v - 2f64.powf(0.7) / 0.7).abs() < 1e-13);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let e = tanh_sinh(0.0, 1.0, 1e-12, |_, da, _| da.powf(-0.5));
        assert!((e.value - 2.0).abs() < 1e-10, "{e:?}");
        // ∫_0^1 (1-x)^{-3/4} dx = 4
        let e = tanh_sinh(0.0, 1.0, 1e-12, |_, _, db| db.powf(-0.75));
        assert!((e.value - 4.0).abs() < 1e-9, "{e:?}");
    }
}
