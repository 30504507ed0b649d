//! Experiment drivers behind the command-line front end.

use crate::annihilators::{
    annihilation_pairing, make_annihilator, nested_pairing, normalized_pairing,
    standard_annihilators,
};
use crate::battery::{self, BatteryEntry, Domain};
use crate::config::{Experiment, ExperimentConfig};
use crate::disc::{self, disc_inner, disc_norm, DiscFamily, DiscGridFunction};
use crate::error::{Error, Result};
use crate::estimates::{fit_lattice_point, t_ladder, EstimateKind};
use crate::geometry::{build_strip_grid, verify_coarea, GridFunction, StripGrid, WeightRule};
use crate::iteration::{iterate, SpectralSummary};
use crate::projector::{
    bergman_defect, cr_residual, cr_residual_values, spectrum_blocks, Axis, PiOperator,
};
use crate::report::{emit_report, num, Check, RunOutput, Summary, Table};
use num_complex::Complex64;
use rand::Rng;
use std::path::Path;
use std::sync::Arc;

/// Monte Carlo sample count for the boundary-measure oracle.
pub const MC_SAMPLES: usize = 1_000_000;

/// Parameter lattice of the exponent study.
pub const P_LATTICE: [f64; 5] = [1.5, 1.7, 2.0, 2.2, 4.0];
pub const BETA_LATTICE: [f64; 3] = [0.0, 0.2, 0.4];

/// Exit status for an error: 2 for configuration problems, 3 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Parameter(_) => 2,
        _ => 3,
    }
}

/// Validate, run, write reports; returns the process exit status.
pub fn execute(cfg: &ExperimentConfig) -> i32 {
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return 2;
    }
    let out = match run(cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    if let Err(e) = emit_report(&cfg.output_dir, &out) {
        eprintln!("error: {e}");
        return 3;
    }
    for c in out.summary.checks.iter().filter(|c| !c.pass) {
        eprintln!("check failed: {} = {:e} (threshold {:e})", c.name, c.value, c.threshold);
    }
    for w in &out.summary.warnings {
        eprintln!("warning: {w}");
    }
    if out.summary.all_pass {
        0
    } else {
        3
    }
}

/// Run the configured experiment without touching the file system.
pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput> {
    cfg.validate()?;
    match cfg.experiment {
        Experiment::StripIterate => strip_iterate(cfg),
        Experiment::StripSpectrum => strip_spectrum(cfg),
        Experiment::Coarea => coarea(cfg),
        Experiment::Annihilators => annihilators(cfg),
        Experiment::Estimates => estimates(cfg),
        Experiment::DiscIterate => disc_iterate(cfg),
    }
}

fn entry(cfg: &ExperimentConfig, fallback: &str, domain: Domain) -> Result<&'static BatteryEntry> {
    let id = if cfg.input == "default" { fallback } else { cfg.input.as_str() };
    let e = battery::find(id)
        .ok_or_else(|| Error::Config(format!("unknown input `{id}` (see list-battery)")))?;
    if e.domain != domain {
        return Err(Error::Config(format!(
            "input `{id}` is not defined for {} experiments",
            cfg.experiment
        )));
    }
    Ok(e)
}

/// Read node values from `x y re im` lines in grid node order.
pub fn read_grid_values(path: &Path, grid: Arc<StripGrid>) -> Result<GridFunction> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::with_capacity(grid.len());
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Config(format!("line {}: expected four numbers", no + 1)))?;
        if parts.len() != 4 {
            return Err(Error::Config(format!("line {}: expected four numbers", no + 1)));
        }
        let k = values.len();
        if k >= grid.len() {
            return Err(Error::Config("more values than grid nodes".into()));
        }
        let z = grid.point(k);
        if (z.re - parts[0]).abs() > 1e-9 || (z.im - parts[1]).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "line {}: node ({}, {}) does not match grid node ({}, {})",
                no + 1,
                parts[0],
                parts[1],
                z.re,
                z.im
            )));
        }
        values.push(Complex64::new(parts[2], parts[3]));
    }
    if values.len() != grid.len() {
        return Err(Error::Config(format!(
            "{} values for a grid of {} nodes",
            values.len(),
            grid.len()
        )));
    }
    GridFunction::new(grid, values)
}

fn strip_input(cfg: &ExperimentConfig, grid: &Arc<StripGrid>, fallback: &str) -> Result<(String, GridFunction)> {
    if let Some(path) = &cfg.input_file {
        return Ok((path.display().to_string(), read_grid_values(path, grid.clone())?));
    }
    let e = entry(cfg, fallback, Domain::Strip)?;
    Ok((e.id.to_string(), GridFunction::sample(grid.clone(), e.eval)))
}

/// Sampled holomorphic atoms with their ids.
pub fn strip_atom_functions(grid: &Arc<StripGrid>) -> Vec<(&'static str, GridFunction)> {
    battery::strip_atoms()
        .into_iter()
        .map(|e| (e.id, GridFunction::sample(grid.clone(), e.eval)))
        .collect()
}

/// Largest CR residual among the sampled atoms.
pub fn atom_baseline(atoms: &[(&str, GridFunction)]) -> f64 {
    atoms.iter().map(|(_, h)| cr_residual(h)).fold(0.0, f64::max)
}

fn grid_of(cfg: &ExperimentConfig, s: &mut Summary) -> Result<Arc<StripGrid>> {
    let g = build_strip_grid(cfg.m, cfg.pad, cfg.nx, cfg.ny, cfg.alpha)?;
    if g.weight_rule == WeightRule::PiecewiseLinear {
        s.warn(format!(
            "alpha = {}: trigonometric product weights are not positive, using \
             piecewise-linear product weights (second-order accurate in 1/ny)",
            cfg.alpha
        ));
    }
    Ok(Arc::new(g))
}

fn strip_iterate(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let mut s = Summary::new(cfg);
    let grid = grid_of(cfg, &mut s)?;
    let op = PiOperator::new(grid.clone(), cfg.n, cfg.interp)?;
    let (id, f) = strip_input(cfg, &grid, "conj_wide")?;
    s.truncation(f.truncated_mass());
    let asym = op.asymmetry_defect();
    s.metric("asymmetry_defect", asym);
    let ratio = op.apply(&f)?.norm() / f.norm();
    s.metric("contraction_ratio", ratio);
    s.metric("parity_commutator_x", op.parity_commutator(&f, Axis::X)?);
    s.metric("parity_commutator_y", op.parity_commutator(&f, Axis::Y)?);
    s.metric("parity_commutator_origin", op.parity_commutator(&f, Axis::Origin)?);
    let atoms = strip_atom_functions(&grid);
    let baseline = atom_baseline(&atoms);
    let g = grid.clone();
    let (limit, mut rep) = iterate(
        |v| op.apply_values(v),
        &grid.quad_weights,
        &f.values,
        cfg.max_iter,
        cfg.stop_tol,
        |v| cr_residual_values(&g, v),
    );
    let limit = GridFunction::new(grid.clone(), limit)?;
    let atom_fns: Vec<GridFunction> = atoms.iter().map(|a| a.1.clone()).collect();
    let defects = bergman_defect(&f, &limit, &atom_fns)?;
    let nf = f.norm();
    let mut pairs = Table::new(
        &format!("columns: atom id, Re and Im of <f - L, h>, |<f - L, h>| / (|f| |h|); input {id}"),
        &["atom", "defect_re", "defect_im", "normalized"],
    );
    for ((aid, h), d) in atoms.iter().zip(&defects) {
        let nd = d.norm() / (nf * h.norm());
        rep.orthogonality.push(nd);
        pairs.push(vec![aid.to_string(), num(d.re), num(d.im), num(nd)]);
    }
    let max_defect = rep.orthogonality.iter().cloned().fold(0.0, f64::max);
    let cr_limit = cr_residual(&limit);
    s.metric("iterations", rep.iterations as f64);
    s.metric("final_delta", rep.final_delta());
    s.metric("cr_limit", cr_limit);
    s.metric("cr_atom_baseline", baseline);
    s.metric("max_bergman_defect", max_defect);
    s.check(Check::flag("converged", rep.converged).with_detail(format!("input {id}")));
    s.check(Check::at_most("norm_monotone", rep.max_norm_increase, asym.max(1e-12)));
    s.check(Check::at_most("delta_nonincreasing", rep.max_delta_increase, 1e-10));
    s.check(Check::at_most("contraction", ratio, 1.0 + 1e-6));
    s.check(Check::at_most("cr_limit_vs_baseline", cr_limit, 10.0 * baseline));
    s.check(Check::at_most("bergman_defect", max_defect, 1e-4));
    let mut series = Table::new(
        "columns: n iteration, norm |pi^n f|, delta |pi^n f - pi^(n-1) f| / |f|, cr_residual of pi^n f",
        &["n", "norm", "delta", "cr_residual"],
    );
    for st in &rep.steps {
        series.push(vec![st.n.to_string(), num(st.norm), num(st.delta), num(st.cr_residual)]);
    }
    Ok(RunOutput {
        summary: s,
        series: Some(series),
        pairs: Some(pairs),
    })
}

/// Spectral summary of the discrete operator; eigenvectors with eigenvalue
/// at least `threshold` are checked for holomorphy.
pub fn spectral_summary(op: &PiOperator, threshold: f64, max_vectors: usize) -> Result<SpectralSummary> {
    let all = spectrum_blocks(op, 0)?;
    let count = all.values.iter().filter(|v| **v >= threshold).count().min(max_vectors);
    let sp = spectrum_blocks(op, count)?;
    let top_cr = sp.top.iter().map(|e| cr_residual(&e.vector)).collect();
    Ok(SpectralSummary {
        top_eigenvalues: sp.top.iter().map(|e| e.value).collect(),
        top_cr_residuals: top_cr,
        min_eigenvalue: sp.min(),
        max_eigenvalue: sp.max(),
        gap_eigenvalue: sp.values.iter().copied().find(|v| *v < 1.0 - 1e-6),
    })
}

fn strip_spectrum(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let mut s = Summary::new(cfg);
    let grid = grid_of(cfg, &mut s)?;
    let op = PiOperator::new(grid.clone(), cfg.n, cfg.interp)?;
    let asym = op.asymmetry_defect();
    let atoms = strip_atom_functions(&grid);
    let baseline = atom_baseline(&atoms);
    let sp = spectral_summary(&op, 0.999, grid.len())?;
    let d = asym.max(1e-12);
    s.metric("asymmetry_defect", asym);
    s.metric("max_eigenvalue", sp.max_eigenvalue);
    s.metric("min_eigenvalue", sp.min_eigenvalue);
    s.metric("eigenvalues_at_least_0.999", sp.top_eigenvalues.len() as f64);
    s.metric("cr_atom_baseline", baseline);
    let worst = sp.top_cr_residuals.iter().cloned().fold(0.0, f64::max);
    s.metric("max_cr_leading_eigenvectors", worst);
    s.check(Check::at_most("asymmetry_defect", asym, 1e-4));
    s.check(Check::at_most("eigenvalue_upper", sp.max_eigenvalue, 1.0 + d));
    s.check(Check::at_least("eigenvalue_lower", sp.min_eigenvalue, -1.0 - d));
    s.check(
        Check::at_most("leading_eigenvectors_cr", worst, 10.0 * baseline)
            .with_detail("eigenvectors with eigenvalue >= 0.999"),
    );
    let mut series = Table::new(
        "columns: rank of eigenvalue (descending), eigenvalue, cr_residual of its eigenvector",
        &["rank", "eigenvalue", "cr_residual"],
    );
    for (k, (v, c)) in sp
        .top_eigenvalues
        .iter()
        .zip(&sp.top_cr_residuals)
        .enumerate()
        .take(cfg.spectrum_k.max(1) * 64)
    {
        series.push(vec![k.to_string(), num(*v), num(*c)]);
    }
    Ok(RunOutput {
        summary: s,
        series: Some(series),
        pairs: None,
    })
}

/// Coarea tolerance (relative to `∫|f|`).
pub const COAREA_TOL: f64 = 1e-6;

fn coarea(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let mut s = Summary::new(cfg);
    let grid = grid_of(cfg, &mut s)?;
    let e = entry(cfg, "real_gauss", Domain::Strip)?;
    let f = e.eval;
    let check = verify_coarea(&grid, |z| f(z).re, cfg.n_theta)?;
    s.truncation(check.truncated_mass);
    s.metric("area_integral", check.area);
    s.metric("nested_integral", check.nested);
    s.metric("residual", check.residual);
    s.check(Check::at_most("coarea_relative_residual", check.relative, COAREA_TOL).with_detail(format!("input {}", e.id)));
    Ok(RunOutput {
        summary: s,
        series: None,
        pairs: None,
    })
}

fn annihilators(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let mut s = Summary::new(cfg);
    let grid = grid_of(cfg, &mut s)?;
    let specs = standard_annihilators();
    let hs = specs
        .iter()
        .map(|sp| make_annihilator(sp, grid.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Table::new(
        "columns: function id, holomorphic flag, annihilator frequency k, profile center, profile width, Re and Im of the pairing, |pairing| / (|f| |h|)",
        &["function", "holomorphic", "k", "center", "width", "pairing_re", "pairing_im", "normalized"],
    );
    let mut worst_atom: f64 = 0.0;
    let mut row = |id: &str, holo: bool, f: &GridFunction| -> Result<f64> {
        let mut best: f64 = 0.0;
        for (sp, h) in specs.iter().zip(&hs) {
            let p = annihilation_pairing(f, h)?;
            let nrm = normalized_pairing(f, h)?;
            best = best.max(nrm);
            pairs.push(vec![
                id.to_string(),
                holo.to_string(),
                sp.k.to_string(),
                num(sp.phi.center),
                num(sp.phi.width),
                num(p.re),
                num(p.im),
                num(nrm),
            ]);
        }
        Ok(best)
    };
    for (id, f) in strip_atom_functions(&grid) {
        worst_atom = worst_atom.max(row(id, true, &f)?);
    }
    let e = entry(cfg, "conj_gauss", Domain::Strip)?;
    let g = GridFunction::sample(grid.clone(), e.eval);
    let nonholo = row(e.id, e.holomorphic, &g)?;
    let t_max = grid.half_length() + 1.0;
    let mut chain: f64 = 0.0;
    for (sp, h) in specs.iter().zip(&hs) {
        let strip = annihilation_pairing(&g, h)?;
        let nested = nested_pairing(e.eval, sp, t_max, cfg.n_theta);
        chain = chain.max((strip - nested).norm() / (g.norm() * h.norm()));
    }
    s.metric("max_atom_pairing", worst_atom);
    s.metric("input_pairing", nonholo);
    s.metric("nested_vs_strip", chain);
    s.check(Check::at_most("atom_pairings", worst_atom, 1e-5));
    s.check(Check::at_least("input_pairing_nonzero", nonholo, 1e-2).with_detail(format!("input {}", e.id)));
    s.check(Check::at_most("nested_matches_strip", chain, COAREA_TOL));
    Ok(RunOutput {
        summary: s,
        series: None,
        pairs: Some(pairs),
    })
}

/// Slope tolerance of the exponent study.
pub const SLOPE_TOL: f64 = 0.05;

fn estimates(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let mut s = Summary::new(cfg);
    let ts = t_ladder(1e-6, 1e-2, 9);
    let mut series = Table::new(
        "columns: integral kind (chord: distance to a circle along a chord; edge: weighted edge integral), p, beta, t, value",
        &["kind", "p", "beta", "t", "value"],
    );
    let mut worst: f64 = 0.0;
    let mut signs_ok = true;
    for &beta in &BETA_LATTICE {
        for &p in &P_LATTICE {
            let mut kinds = vec![EstimateKind::Edge];
            if beta == 0.0 {
                kinds.push(EstimateKind::Chord);
            }
            for kind in kinds {
                let fit = fit_lattice_point(kind, p, beta, &ts)?;
                for (t, v) in fit.ts.iter().zip(&fit.values) {
                    let k = match kind {
                        EstimateKind::Chord => "chord",
                        EstimateKind::Edge => "edge",
                    };
                    series.push(vec![k.into(), num(p), num(beta), num(*t), num(*v)]);
                }
                worst = worst.max(fit.error());
                let threshold = 2.0 - beta;
                let sign_ok = if (p - threshold).abs() < 1e-12 {
                    fit.fitted.abs() <= SLOPE_TOL
                } else if p > threshold {
                    fit.fitted > 0.0 && fit.decays()
                } else {
                    fit.fitted < 0.0 && fit.diverges()
                };
                signs_ok &= sign_ok;
                let tag = match kind {
                    EstimateKind::Chord => "chord",
                    EstimateKind::Edge => "edge",
                };
                s.metric(&format!("slope_{tag}_p{p}_beta{beta}"), fit.fitted);
            }
        }
    }
    s.metric("max_slope_error", worst);
    s.check(Check::at_most("slope_error", worst, SLOPE_TOL));
    s.check(Check::flag("threshold_sign_flip", signs_ok));
    Ok(RunOutput {
        summary: s,
        series: Some(series),
        pairs: None,
    })
}

/// Largest Vieta residual over grid nodes inside `G`.
pub fn vieta_residual(family: &DiscFamily) -> f64 {
    let mut worst: f64 = 0.0;
    for z in &family.zeta {
        if let Ok((s1, s2)) = disc::circles_through(*z, family.eps) {
            let (u1, u2) = (s1 * s1, s2 * s2);
            worst = worst
                .max((u1 * u2 - z.norm_sqr()).abs())
                .max((u1 + u2 - (1.0 - 2.0 * family.eps * z.re)).abs());
        }
    }
    worst
}

/// Seeded random polynomial in `ζ` and `conj(ζ)` of degree at most two.
pub fn random_disc_function<R: Rng>(rng: &mut R) -> impl Fn(Complex64) -> Complex64 {
    let a: Vec<Complex64> = (0..6)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    move |z: Complex64| {
        let zb = z.conj();
        a[0] + a[1] * z + a[2] * zb + a[3] * z * zb + a[4] * zb * zb + a[5] * z * z
    }
}

/// Largest relative asymmetry `|⟨Tf, g⟩ − ⟨f, Tg⟩| / (‖f‖‖g‖)` over seeded pairs.
pub fn disc_asymmetry(family: &DiscFamily, pairs: usize, seed: u64) -> Result<f64> {
    let mut rng = battery::seeded(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let f = family.sample(random_disc_function(&mut rng));
        let g = family.sample(random_disc_function(&mut rng));
        let tf = family.apply_t(&f)?;
        let tg = family.apply_t(&g)?;
        let d = disc_inner(&tf, &g, family)? - disc_inner(&f, &tg, family)?;
        worst = worst.max(d.norm() / (disc_norm(&f, family)? * disc_norm(&g, family)?));
    }
    Ok(worst)
}

fn disc_iterate(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let mut s = Summary::new(cfg);
    let fam = DiscFamily::new(cfg.eps, cfg.ns, cfg.npsi)?;
    s.metric("s_max", fam.s_max);
    s.metric("kappa", disc::KAPPA);
    let e = entry(cfg, "conj_zeta", Domain::Disc)?;
    let f = fam.sample(e.eval);
    s.metric("redundancy_mismatch", fam.redundancy_mismatch(&f)?);
    let vieta = vieta_residual(&fam);
    s.check(Check::at_most("vieta", vieta, 1e-10));
    let mut rng = battery::seeded(cfg.seed);
    let (mc, se) = disc::monte_carlo_boundary_integral(|_| 1.0, cfg.eps, MC_SAMPLES, &mut rng)?;
    let one = fam.sample(|_| Complex64::new(1.0, 0.0));
    let grid_mass = disc_inner(&one, &one, &fam)?.re;
    s.metric("measure_grid", grid_mass);
    s.metric("measure_monte_carlo", mc);
    s.metric("measure_monte_carlo_stderr", se);
    s.check(Check::at_most("measure_vs_monte_carlo", (grid_mass - mc).abs() / mc, 0.01));
    let asym = disc_asymmetry(&fam, 4, cfg.seed)?;
    s.metric("asymmetry_defect", asym);
    s.check(Check::at_most("self_adjoint", asym, 1e-3));
    let atoms: Vec<(&str, DiscGridFunction)> = battery::disc_atoms()
        .into_iter()
        .map(|a| (a.id, fam.sample(a.eval)))
        .collect();
    let mut fixed: f64 = 0.0;
    for (_, h) in &atoms {
        let th = fam.apply_t(h)?;
        fixed = fixed.max(disc_norm(&th.sub(h)?, &fam)? / disc_norm(h, &fam)?);
    }
    s.metric("max_fixed_point_error", fixed);
    s.check(Check::at_most("atoms_fixed", fixed, 1e-6));
    let tf = fam.apply_t(&f)?;
    let ratio = disc_norm(&tf, &fam)? / disc_norm(&f, &fam)?;
    s.metric("contraction_ratio", ratio);
    s.check(Check::at_most("contraction", ratio, 1.0 + asym.max(1e-12)));
    let baseline = atoms.iter().map(|(_, h)| fam.cr_residual(h)).fold(0.0, f64::max);
    s.metric("cr_atom_baseline", baseline);
    let (lv, mut rep) = iterate(
        |v| fam.apply_values(v),
        &fam.weights,
        &f.values,
        cfg.max_iter,
        cfg.stop_tol,
        |v| fam.cr_residual_values(v),
    );
    let limit = DiscGridFunction {
        ns: fam.ns,
        npsi: fam.npsi,
        values: lv,
    };
    let r = f.sub(&limit)?;
    let nf = disc_norm(&f, &fam)?;
    let mut pairs = Table::new(
        &format!("columns: atom id, Re and Im of <f - L, h>, |<f - L, h>| / (|f| |h|); input {}", e.id),
        &["atom", "defect_re", "defect_im", "normalized"],
    );
    for (aid, h) in &atoms {
        let d = disc_inner(&r, h, &fam)?;
        let nd = d.norm() / (nf * disc_norm(h, &fam)?);
        rep.orthogonality.push(nd);
        pairs.push(vec![aid.to_string(), num(d.re), num(d.im), num(nd)]);
    }
    let max_defect = rep.orthogonality.iter().cloned().fold(0.0, f64::max);
    let cr_limit = fam.cr_residual(&limit);
    s.metric("iterations", rep.iterations as f64);
    s.metric("cr_limit", cr_limit);
    s.metric("max_bergman_defect", max_defect);
    if cfg.eps == 0.0 {
        s.warn(
            "eps = 0: both circles through a point coincide, so the iteration fixes every \
             radial profile; convergence checks are not applied",
        );
    } else {
        s.check(Check::flag("converged", rep.converged));
        s.check(Check::at_most("norm_monotone", rep.max_norm_increase, asym.max(1e-12)));
        s.check(Check::at_most("cr_limit_vs_baseline", cr_limit, 10.0 * baseline));
        s.check(Check::at_most("bergman_defect", max_defect, 1e-3));
    }
    let mut series = Table::new(
        &format!(
            "columns: n iteration, norm |T^n f|, delta |T^n f - T^(n-1) f| / |f|, cr_residual; eps {}, grid {}x{}",
            cfg.eps, cfg.ns, cfg.npsi
        ),
        &["n", "norm", "delta", "cr_residual"],
    );
    for st in &rep.steps {
        series.push(vec![st.n.to_string(), num(st.norm), num(st.delta), num(st.cr_residual)]);
    }
    Ok(RunOutput {
        summary: s,
        series: Some(series),
        pairs: Some(pairs),
    })
}

/// Catalog text for `list-battery`.
pub fn battery_catalog() -> String {
    #[derive(serde::Serialize)]
    struct Ann {
        k: u32,
        profile: String,
    }
    #[derive(serde::Serialize)]
    struct Catalog {
        functions: Vec<&'static BatteryEntry>,
        annihilators: Vec<Ann>,
    }
    let cat = Catalog {
        functions: battery::strip_battery().iter().chain(battery::disc_battery()).collect(),
        annihilators: standard_annihilators()
            .iter()
            .map(|a| Ann {
                k: a.k,
                profile: format!("exp(-(t-{})^2/{})", a.phi.center, a.phi.width),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&cat).expect("catalog serialises") + "\n"
}
