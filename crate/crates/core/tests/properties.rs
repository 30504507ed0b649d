use num_complex::Complex64;
use proptest::prelude::*;
use strip_bergman::config::ExperimentConfig;
use strip_bergman::disc::{circle_of, circles_through};
use strip_bergman::geometry::{circle_nodes, tangent_centers};
use strip_bergman::szego::{circle_inner, weight_moments, SzegoSolver};
use strip_bergman::toeplitz::Toeplitz;

fn complex_vec(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tangent_centers_are_at_unit_distance(x in -10.0..10.0f64, y in -0.999..0.999f64) {
        let z = Complex64::new(x, y);
        let (t1, t2) = tangent_centers(z).unwrap();
        prop_assert!(((z - t1).norm() - 1.0).abs() < 1e-12);
        prop_assert!(((z - t2).norm() - 1.0).abs() < 1e-12);
        prop_assert!(t1 <= x && x <= t2);
    }

    #[test]
    fn disc_roots_satisfy_vieta(
        eps in 0.0..0.5f64,
        re in -0.6..0.6f64,
        im in -0.6..0.6f64,
    ) {
        let z = Complex64::new(re, im);
        if let Ok((s1, s2)) = circles_through(z, eps) {
            let (u1, u2) = (s1 * s1, s2 * s2);
            prop_assert!((u1 * u2 - z.norm_sqr()).abs() < 1e-12);
            prop_assert!((u1 + u2 - (1.0 - 2.0 * eps * re)).abs() < 1e-12);
            for s in [s1, s2] {
                let (c, r) = circle_of(s, eps).unwrap();
                prop_assert!(((z - c).norm() - r).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn toeplitz_solve_has_small_residual(beta in 0.0..0.45f64, b in complex_vec(17)) {
        let t = Toeplitz::new(&weight_moments(beta, 16).unwrap()).unwrap();
        let x = t.solve(&b);
        let dense = t.dense();
        let err = (0..17)
            .map(|i| ((0..17).map(|j| x[j] * dense[(i, j)]).sum::<Complex64>() - b[i]).norm())
            .fold(0.0, f64::max);
        prop_assert!(err < 1e-10);
    }

    #[test]
    fn szego_projection_is_idempotent(beta in 0.0..0.3f64, t in -5.0..5.0f64, g in complex_vec(64)) {
        let slice = circle_nodes(t, 64, beta).unwrap();
        let solver = SzegoSolver::for_slice(&slice, 24).unwrap();
        let pg = solver.apply(&g, &slice).unwrap();
        let ppg = solver.apply(&pg, &slice).unwrap();
        let d: Vec<Complex64> = ppg.iter().zip(&pg).map(|(a, b)| a - b).collect();
        let norm = |v: &[Complex64]| circle_inner(v, v, &slice).unwrap().re.sqrt();
        prop_assert!(norm(&d) <= 1e-10 * norm(&g).max(1e-300));
        prop_assert!(norm(&pg) <= norm(&g) * (1.0 + 1e-12));
    }

    #[test]
    fn config_round_trips(
        alpha in 0.5..0.999f64,
        nx in 8usize..400,
        ny in 8usize..100,
        eps in 0.0..0.9f64,
        seed in any::<u64>(),
        tol in 1e-14..1e-2f64,
        cubic in any::<bool>(),
    ) {
        let mut c = ExperimentConfig::default();
        c.set("alpha", &alpha.to_string()).unwrap();
        c.set("nx", &nx.to_string()).unwrap();
        c.set("ny", &ny.to_string()).unwrap();
        c.set("eps", &eps.to_string()).unwrap();
        c.set("seed", &seed.to_string()).unwrap();
        c.set("stop_tol", &tol.to_string()).unwrap();
        c.set("interp", if cubic { "cubic" } else { "spectral" }).unwrap();
        prop_assert_eq!(ExperimentConfig::from_text(&c.to_text()).unwrap(), c);
    }
}
