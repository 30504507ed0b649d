use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;
use strip_bergman::battery;
use strip_bergman::disc::{
    circle_of, circles_through, disc_inner, monte_carlo_boundary_integral, s_max, DiscFamily,
};
use strip_bergman::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn every_circle_point_finds_its_circle() {
    let mut rng = battery::seeded(21);
    for eps in [0.0, 0.1, 0.4] {
        let top = s_max(eps);
        for _ in 0..2000 {
            let s = rng.gen_range(0.05..0.95) * top;
            let psi = rng.gen_range(0.0..2.0 * PI);
            let (cc, r) = circle_of(s, eps).unwrap();
            let z = cc + Complex64::from_polar(r, psi);
            let Ok((s1, s2)) = circles_through(z, eps) else { continue };
            let hit = (s1 - s).abs().min((s2 - s).abs());
            assert!(hit < 1e-8 * top, "eps {eps} s {s}: {s1} {s2}");
        }
    }
}

#[test]
fn zero_eps_domain_is_the_half_disc() {
    let mut rng = battery::seeded(22);
    for _ in 0..5000 {
        let z = c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
        assert_eq!(circles_through(z, 0.0).is_ok(), z.norm() < 0.5);
    }
}

#[test]
fn parameters_are_validated() {
    assert!(matches!(circle_of(0.5, 1.0), Err(Error::Parameter(_))));
    assert!(matches!(circle_of(0.5, -0.1), Err(Error::Parameter(_))));
    assert!(matches!(circle_of(2.0, 0.1), Err(Error::Domain(_))));
    assert!(DiscFamily::new(1.2, 16, 32).is_err());
    let mut rng = battery::seeded(1);
    assert!(monte_carlo_boundary_integral(|_| 1.0, 0.1, 1, &mut rng).is_err());
}

#[test]
fn grid_measure_matches_sphere_integrals() {
    let fam = DiscFamily::new(0.0, 48, 128).unwrap();
    let one = fam.sample(|_| c(1.0, 0.0));
    let modsq = fam.sample(|z| c(z.norm_sqr(), 0.0));
    // |zw|² on S³ has mean 1/6; the boundary measure has total 4π²
    let total = disc_inner(&one, &one, &fam).unwrap().re;
    assert!((total / (4.0 * PI * PI) - 1.0).abs() < 1e-3, "{total}");
    let second = disc_inner(&modsq, &one, &fam).unwrap().re;
    assert!((second / (4.0 * PI * PI / 6.0) - 1.0).abs() < 1e-3, "{second}");
}

#[test]
fn monte_carlo_agrees_with_grid_measure() {
    let fam = DiscFamily::new(0.1, 48, 128).unwrap();
    let mut rng = battery::seeded(23);
    let (mc, se) = monte_carlo_boundary_integral(|z| z.norm_sqr(), 0.1, 200_000, &mut rng).unwrap();
    let grid = disc_inner(&fam.sample(|z| c(z.norm_sqr(), 0.0)), &fam.sample(|_| c(1.0, 0.0)), &fam)
        .unwrap()
        .re;
    assert!((grid - mc).abs() < 5.0 * se, "{grid} vs {mc} ± {se}");
}

#[test]
fn holomorphic_atoms_are_fixed() {
    let fam = DiscFamily::new(0.1, 48, 128).unwrap();
    for a in battery::disc_atoms() {
        let f = fam.sample(a.eval);
        let tf = fam.apply_t(&f).unwrap();
        let err = disc_inner(&tf.sub(&f).unwrap(), &tf.sub(&f).unwrap(), &fam).unwrap().re.sqrt()
            / disc_inner(&f, &f, &fam).unwrap().re.sqrt();
        assert!(err < 1e-8, "{}: {err:e}", a.id);
    }
}

#[test]
fn operator_is_self_adjoint_in_the_disc_metric() {
    let fam = DiscFamily::new(0.1, 32, 64).unwrap();
    let f = fam.sample(|z| z.conj() * z + 0.3);
    let g = fam.sample(|z| (z * 2.0).exp().conj());
    let lhs = disc_inner(&fam.apply_t(&f).unwrap(), &g, &fam).unwrap();
    let rhs = disc_inner(&f, &fam.apply_t(&g).unwrap(), &fam).unwrap();
    assert!((lhs - rhs).norm() < 1e-3 * lhs.norm().max(1.0), "{lhs} vs {rhs}");
}
