use approx::assert_relative_eq;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;
use std::sync::Arc;
use strip_bergman::battery;
use strip_bergman::geometry::{
    circle_nodes, fold_angles, tangent_centers, verify_coarea, GridFunction, WeightRule,
};
use strip_bergman::quad::{gamma, tanh_sinh};
use strip_bergman::{build_strip_grid, Error};

fn beta_fn(a: f64, b: f64) -> f64 {
    gamma(a) * gamma(b) / gamma(a + b)
}

#[test]
fn tangent_circles_pass_through_the_point() {
    let mut rng = battery::seeded(1);
    for _ in 0..10_000 {
        let z = Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-0.999..0.999));
        let (t1, t2) = tangent_centers(z).unwrap();
        assert!(t1 < t2);
        assert_relative_eq!((z - t1).norm(), 1.0, epsilon = 1e-12);
        assert_relative_eq!((z - t2).norm(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(0.5 * (t1 + t2), z.re, epsilon = 1e-12);
        // z sits on the right half of C_{t1} and the left half of C_{t2}
        assert!(z.re >= t1 && z.re <= t2);
    }
}

#[test]
fn tangent_centers_reject_points_off_the_open_strip() {
    for z in [Complex64::new(0.0, 1.0), Complex64::new(2.0, -1.5)] {
        assert!(matches!(tangent_centers(z), Err(Error::Domain(_))));
    }
}

#[test]
fn row_weights_integrate_the_strip_weight() {
    for alpha in [0.5, 0.6, 0.75, 0.8] {
        let g = build_strip_grid(3.0, 2.0, 16, 65, alpha).unwrap();
        assert_eq!(g.weight_rule, WeightRule::Trigonometric);
        let total: f64 = g.row_weights.iter().sum();
        assert_relative_eq!(total, beta_fn(0.5, 1.0 - alpha), max_relative = 1e-12);
        let second: f64 = g.row_weights.iter().zip(&g.y).map(|(w, y)| w * y * y).sum();
        assert_relative_eq!(second, beta_fn(1.5, 1.0 - alpha), max_relative = 1e-12);
    }
}

#[test]
fn strong_singularity_falls_back_to_positive_weights() {
    for alpha in [0.85, 0.9, 0.95, 0.99] {
        let g = build_strip_grid(3.0, 2.0, 16, 65, alpha).unwrap();
        assert_eq!(g.weight_rule, WeightRule::PiecewiseLinear);
        assert!(g.row_weights.iter().all(|w| *w > 0.0));
        let total: f64 = g.row_weights.iter().sum();
        assert_relative_eq!(total, beta_fn(0.5, 1.0 - alpha), max_relative = 1e-10);
        let second: f64 = g.row_weights.iter().zip(&g.y).map(|(w, y)| w * y * y).sum();
        assert_relative_eq!(second, beta_fn(1.5, 1.0 - alpha), max_relative = 2e-3);
    }
}

#[test]
fn piecewise_linear_weights_converge_at_second_order() {
    let err = |ny: usize| {
        let g = build_strip_grid(3.0, 2.0, 16, ny, 0.9).unwrap();
        let second: f64 = g.row_weights.iter().zip(&g.y).map(|(w, y)| w * y * y).sum();
        (second / beta_fn(1.5, 0.1) - 1.0).abs()
    };
    let ratio = err(65) / err(130);
    assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
}

#[test]
fn row_weights_match_adaptive_quadrature() {
    let alpha = 0.75;
    let g = build_strip_grid(3.0, 2.0, 16, 65, alpha).unwrap();
    // ∫ cos(πy/2) (1-y²)^{-α} dy with endpoint distances passed through
    let oracle = tanh_sinh(-1.0, 1.0, 1e-14, |y, da, db| {
        (0.5 * PI * y).cos() * (da * db).powf(-alpha)
    })
    .value;
    let grid: f64 = g
        .row_weights
        .iter()
        .zip(&g.y)
        .map(|(w, y)| w * (0.5 * PI * y).cos())
        .sum();
    assert_relative_eq!(grid, oracle, max_relative = 1e-10);
}

#[test]
fn grid_is_mirror_symmetric() {
    let g = build_strip_grid(2.0, 2.0, 40, 17, 0.7).unwrap();
    for i in 0..g.nx {
        assert_relative_eq!(g.x[i], -g.x[g.nx - 1 - i], epsilon = 1e-14);
    }
    for j in 0..g.ny {
        assert_relative_eq!(g.y[j], -g.y[g.ny - 1 - j], epsilon = 1e-15);
        assert_eq!(g.row_weights[j], g.row_weights[g.ny - 1 - j]);
    }
    assert_eq!(g.len(), 40 * 17);
    assert_eq!(g.point(g.index(3, 5)), Complex64::new(g.x[3], g.y[5]));
}

#[test]
fn gaussian_norm_matches_closed_form() {
    let alpha = 0.75;
    let g = Arc::new(build_strip_grid(3.0, 2.0, 241, 65, alpha).unwrap());
    let f = GridFunction::sample(g, |z| Complex64::new((-z.re * z.re).exp(), 0.0));
    let exact = ((PI / 2.0).sqrt() * beta_fn(0.5, 1.0 - alpha)).sqrt();
    assert_relative_eq!(f.norm(), exact, max_relative = 1e-12);
}

#[test]
fn circle_weights_integrate_the_boundary_weight() {
    for beta in [0.0, 0.1, 0.25, 0.3] {
        let c = circle_nodes(0.4, 130, beta).unwrap();
        assert_eq!(c.rule, WeightRule::Trigonometric);
        let total: f64 = c.quad.iter().sum();
        let exact = 2.0 * PI.sqrt() * gamma(0.5 - beta) / gamma(1.0 - beta);
        assert_relative_eq!(total, exact, max_relative = 1e-12);
        // ∫ cos 2θ |cos θ|^{-2β} dθ = -c0 β/(1-β)
        let second: f64 = c.quad.iter().zip(&c.theta).map(|(q, t)| q * (2.0 * t).cos()).sum();
        assert_relative_eq!(second, -exact * beta / (1.0 - beta), epsilon = 1e-12);
        assert!(c.points().iter().all(|p| ((p - 0.4).norm() - 1.0).abs() < 1e-14));
    }
}

#[test]
fn fold_angles_avoid_the_poles_and_pair_rows() {
    for n in [8, 10, 130, 258] {
        let th = fold_angles(n);
        assert!(th.iter().all(|t| t.cos().abs() > 1e-3));
        for j in 0..n / 2 {
            assert_relative_eq!(th[j].sin(), th[n - 1 - j].sin(), epsilon = 1e-14);
        }
    }
}

#[test]
fn coarea_identity_holds_for_weighted_strip() {
    for alpha in [0.5, 0.75] {
        let g = build_strip_grid(3.0, 2.0, 241, 65, alpha).unwrap();
        let r = verify_coarea(&g, |z| (-z.re * z.re).exp() * (1.0 + z.im), 256).unwrap();
        assert!(r.relative < 1e-9, "alpha {alpha}: {r:?}");
    }
}

#[test]
fn coarea_reports_truncated_mass() {
    let g = build_strip_grid(1.0, 2.0, 120, 17, 0.5).unwrap();
    let r = verify_coarea(&g, |z| (-z.re * z.re / 4.0).exp(), 64).unwrap();
    assert!(r.truncated_mass > 1e-3);
}

#[test]
fn grid_functions_on_different_grids_do_not_mix() {
    let a = Arc::new(build_strip_grid(1.0, 2.0, 8, 4, 0.5).unwrap());
    let b = Arc::new(build_strip_grid(1.0, 2.0, 10, 4, 0.5).unwrap());
    let fa = GridFunction::zeros(a);
    let fb = GridFunction::zeros(b);
    assert!(matches!(fa.add(&fb), Err(Error::GridMismatch(_))));
}
