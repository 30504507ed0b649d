//! Built-in test functions with closed-form evaluators.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

type Eval = fn(Complex64) -> Complex64;

/// How a battery entry decays as `|Re z| → ∞` (or where it lives).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decay {
    /// `exp(-x²)` or faster.
    Gaussian,
    /// `exp(-x²/s)` with `s > 1`; needs a wider window than the reference grid.
    WideGaussian,
    /// Defined on the bounded disc-family domain; no decay needed.
    Bounded,
}

/// Which domain an entry is meant for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Strip,
    Disc,
}

/// One closed-form test function.
#[derive(Debug, Clone, Serialize)]
pub struct BatteryEntry {
    pub id: &'static str,
    pub formula: &'static str,
    pub holomorphic: bool,
    pub decay: Decay,
    pub domain: Domain,
    #[serde(skip)]
    pub eval: Eval,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gauss(z: Complex64, a: f64) -> Complex64 {
    (-(z - a) * (z - a)).exp()
}

fn real_gauss(z: Complex64, s: f64) -> f64 {
    (-z.re * z.re / s).exp()
}

const STRIP: &[BatteryEntry] = &[
    BatteryEntry {
        id: "gauss",
        formula: "exp(-z^2)",
        holomorphic: true,
        decay: Decay::Gaussian,
        domain: Domain::Strip,
        eval: |z| gauss(z, 0.0),
    },
    BatteryEntry {
        id: "gauss_shift",
        formula: "exp(-(z-0.5)^2)",
        holomorphic: true,
        decay: Decay::Gaussian,
        domain: Domain::Strip,
        eval: |z| gauss(z, 0.5),
    },
    BatteryEntry {
        id: "z_gauss",
        formula: "z exp(-z^2)",
        holomorphic: true,
        decay: Decay::Gaussian,
        domain: Domain::Strip,
        eval: |z| z * gauss(z, 0.0),
    },
    BatteryEntry {
        id: "cauchy_gauss",
        formula: "exp(-z^2) / (z-2i)^2",
        holomorphic: true,
        decay: Decay::Gaussian,
        domain: Domain::Strip,
        eval: |z| gauss(z, 0.0) / ((z - c(0.0, 2.0)) * (z - c(0.0, 2.0))),
    },
    BatteryEntry {
        id: "cauchy_gauss_shift",
        formula: "exp(-(z+0.7)^2) / (z+1.5i)^2",
        holomorphic: true,
        decay: Decay::Gaussian,
        domain: Domain::Strip,
        eval: |z| gauss(z, -0.7) / ((z + c(0.0, 1.5)) * (z + c(0.0, 1.5))),
    },
    BatteryEntry {
        id: "gauss_product",
        formula: "exp(-z^2) exp(-(z-0.6)^2)",
        holomorphic: true,
        decay: Decay::Gaussian,
        domain: Domain::Strip,
        eval: |z| gauss(z, 0.0) * gauss(z, 0.6),
    },
    BatteryEntry {
        id: "conj_gauss",
        formula: "conj(z) exp(-x^2)",
        holomorphic: false,
        decay: Decay::Gaussian,
        domain: Domain::Strip,
        eval: |z| z.conj() * real_gauss(z, 1.0),
    },
    BatteryEntry {
        id: "conj_wide",
        formula: "conj(z) exp(-x^2/2)",
        holomorphic: false,
        decay: Decay::WideGaussian,
        domain: Domain::Strip,
        eval: |z| z.conj() * real_gauss(z, 2.0),
    },
    BatteryEntry {
        id: "y_wide",
        formula: "y exp(-x^2/2)",
        holomorphic: false,
        decay: Decay::WideGaussian,
        domain: Domain::Strip,
        eval: |z| c(z.im * real_gauss(z, 2.0), 0.0),
    },
    BatteryEntry {
        id: "modsq_wide",
        formula: "|z|^2 exp(-x^2/2)",
        holomorphic: false,
        decay: Decay::WideGaussian,
        domain: Domain::Strip,
        eval: |z| c(z.norm_sqr() * real_gauss(z, 2.0), 0.0),
    },
    BatteryEntry {
        id: "real_gauss",
        formula: "exp(-x^2)",
        holomorphic: false,
        decay: Decay::Gaussian,
        domain: Domain::Strip,
        eval: |z| c(real_gauss(z, 1.0), 0.0),
    },
    BatteryEntry {
        id: "y_gauss",
        formula: "y exp(-x^2)",
        holomorphic: false,
        decay: Decay::Gaussian,
        domain: Domain::Strip,
        eval: |z| c(z.im * real_gauss(z, 1.0), 0.0),
    },
    BatteryEntry {
        id: "mix_conj",
        formula: "exp(-z^2) + conj(z) exp(-x^2/2)",
        holomorphic: false,
        decay: Decay::WideGaussian,
        domain: Domain::Strip,
        eval: |z| gauss(z, 0.0) + z.conj() * real_gauss(z, 2.0),
    },
    BatteryEntry {
        id: "mix_y",
        formula: "exp(-(z-0.5)^2) + y exp(-x^2/2)",
        holomorphic: false,
        decay: Decay::WideGaussian,
        domain: Domain::Strip,
        eval: |z| gauss(z, 0.5) + z.im * real_gauss(z, 2.0),
    },
    BatteryEntry {
        id: "mix_ysq",
        formula: "z exp(-z^2) + y^2 exp(-x^2/3)",
        holomorphic: false,
        decay: Decay::WideGaussian,
        domain: Domain::Strip,
        eval: |z| z * gauss(z, 0.0) + z.im * z.im * real_gauss(z, 3.0),
    },
    BatteryEntry {
        id: "mix_real",
        formula: "exp(-z^2)/(z-2i)^2 + exp(-x^2/2.5)",
        holomorphic: false,
        decay: Decay::WideGaussian,
        domain: Domain::Strip,
        eval: |z| gauss(z, 0.0) / ((z - c(0.0, 2.0)) * (z - c(0.0, 2.0))) + real_gauss(z, 2.5),
    },
];

const DISC: &[BatteryEntry] = &[
    BatteryEntry {
        id: "one",
        formula: "1",
        holomorphic: true,
        decay: Decay::Bounded,
        domain: Domain::Disc,
        eval: |_| c(1.0, 0.0),
    },
    BatteryEntry {
        id: "zeta",
        formula: "zeta",
        holomorphic: true,
        decay: Decay::Bounded,
        domain: Domain::Disc,
        eval: |z| z,
    },
    BatteryEntry {
        id: "zeta_sq",
        formula: "zeta^2",
        holomorphic: true,
        decay: Decay::Bounded,
        domain: Domain::Disc,
        eval: |z| z * z,
    },
    BatteryEntry {
        id: "cauchy",
        formula: "1 / (zeta - 1.5)",
        holomorphic: true,
        decay: Decay::Bounded,
        domain: Domain::Disc,
        eval: |z| 1.0 / (z - 1.5),
    },
    BatteryEntry {
        id: "conj_zeta",
        formula: "conj(zeta)",
        holomorphic: false,
        decay: Decay::Bounded,
        domain: Domain::Disc,
        eval: |z| z.conj(),
    },
    BatteryEntry {
        id: "conj_zeta_sq",
        formula: "conj(zeta)^2",
        holomorphic: false,
        decay: Decay::Bounded,
        domain: Domain::Disc,
        eval: |z| z.conj() * z.conj(),
    },
    BatteryEntry {
        id: "modsq",
        formula: "|zeta|^2",
        holomorphic: false,
        decay: Decay::Bounded,
        domain: Domain::Disc,
        eval: |z| c(z.norm_sqr(), 0.0),
    },
];

/// All strip entries.
pub fn strip_battery() -> &'static [BatteryEntry] {
    STRIP
}

/// All disc-family entries.
pub fn disc_battery() -> &'static [BatteryEntry] {
    DISC
}

/// The six holomorphic strip atoms.
pub fn strip_atoms() -> Vec<&'static BatteryEntry> {
    STRIP.iter().filter(|e| e.holomorphic).collect()
}

/// Purely non-holomorphic strip inputs (no holomorphic part added).
pub fn strip_nonholomorphic() -> Vec<&'static BatteryEntry> {
    ["conj_gauss", "conj_wide", "y_wide", "modsq_wide"]
        .iter()
        .filter_map(|id| find(id))
        .collect()
}

/// Atom-plus-perturbation strip inputs used for the convergence study.
pub fn strip_mixed() -> Vec<&'static BatteryEntry> {
    ["mix_conj", "mix_y", "mix_ysq", "mix_real"]
        .iter()
        .filter_map(|id| find(id))
        .collect()
}

/// Holomorphic disc atoms.
pub fn disc_atoms() -> Vec<&'static BatteryEntry> {
    DISC.iter().filter(|e| e.holomorphic).collect()
}

/// Look up an entry by id in either battery.
pub fn find(id: &str) -> Option<&'static BatteryEntry> {
    STRIP.iter().chain(DISC).find(|e| e.id == id)
}

/// Seeded smooth decaying test function on the strip: a sum of three
/// randomly shifted Gaussians with random affine envelopes.
pub fn random_smooth(rng: &mut ChaCha8Rng) -> impl Fn(Complex64) -> Complex64 {
    let terms: Vec<_> = (0..3)
        .map(|_| {
            let amp = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let shift: f64 = rng.gen_range(-1.0..1.0);
            let width: f64 = rng.gen_range(0.7..1.2);
            let cx = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let cy = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            (amp, shift, width, cx, cy)
        })
        .collect();
    move |z: Complex64| {
        terms
            .iter()
            .map(|(amp, shift, width, cx, cy)| {
                let d = (z.re - shift) / width;
                amp * (1.0 + cx * z.re * 0.5 + cy * z.im) * (-d * d).exp()
            })
            .sum()
    }
}

/// Deterministic generator used for every seeded battery.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        assert_eq!(strip_atoms().len(), 6);
        assert_eq!(strip_mixed().len(), 4);
        assert_eq!(strip_nonholomorphic().len(), 4);
        assert_eq!(disc_atoms().len(), 4);
        let mut ids: Vec<_> = STRIP.iter().chain(DISC).map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), STRIP.len() + DISC.len());
    }

    #[test]
    fn random_functions_are_reproducible() {
        let f = random_smooth(&mut seeded(3));
        let g = random_smooth(&mut seeded(3));
        let z = c(0.3, -0.2);
        assert_eq!(f(z), g(z));
    }
}
