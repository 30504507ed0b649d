//! Experiment configuration: a `key = value` text file whose keys can each
//! be overridden from the command line.

use crate::error::{Error, Result};
use crate::projector::Interp;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Which suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    StripIterate,
    StripSpectrum,
    Coarea,
    Annihilators,
    Estimates,
    DiscIterate,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::StripIterate,
        Experiment::StripSpectrum,
        Experiment::Coarea,
        Experiment::Annihilators,
        Experiment::Estimates,
        Experiment::DiscIterate,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::StripIterate => "strip_iterate",
            Experiment::StripSpectrum => "strip_spectrum",
            Experiment::Coarea => "coarea",
            Experiment::Annihilators => "annihilators",
            Experiment::Estimates => "estimates",
            Experiment::DiscIterate => "disc_iterate",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .iter()
            .copied()
            .find(|e| e.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown experiment `{}`", s.trim())))
    }
}

/// Full parameter set of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub m: f64,
    pub pad: f64,
    pub nx: usize,
    pub ny: usize,
    /// Angle nodes of the independent circle rule used by the coarea check.
    pub n_theta: usize,
    /// Szegő truncation degree.
    pub n: usize,
    pub alpha: f64,
    pub interp: Interp,
    pub eps: f64,
    pub ns: usize,
    pub npsi: usize,
    /// Battery id of the input function (`default` picks one per experiment).
    pub input: String,
    /// Optional node-sampled input file (`x y re im` per line).
    pub input_file: Option<PathBuf>,
    pub max_iter: usize,
    pub stop_tol: f64,
    pub seed: u64,
    pub spectrum_k: usize,
    pub threads: usize,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: Experiment::StripIterate,
            m: 3.0,
            pad: 2.0,
            nx: 241,
            ny: 65,
            n_theta: 256,
            n: 64,
            alpha: 0.5,
            interp: Interp::Spectral,
            eps: 0.1,
            ns: 96,
            npsi: 256,
            input: "default".into(),
            input_file: None,
            max_iter: 500,
            stop_tol: 1e-8,
            seed: 20240917,
            spectrum_k: 8,
            threads: 0,
            output_dir: PathBuf::from("out"),
        }
    }
}

/// Every recognised key, in file order.
pub const KEYS: [&str; 21] = [
    "experiment",
    "m",
    "pad",
    "nx",
    "ny",
    "n_theta",
    "n",
    "alpha",
    "interp",
    "eps",
    "ns",
    "npsi",
    "input",
    "input_file",
    "max_iter",
    "stop_tol",
    "seed",
    "spectrum_k",
    "threads",
    "output_dir",
    "config_version",
];

const CONFIG_VERSION: &str = "1";

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("cannot parse `{value}` for key `{key}`")))
}

impl ExperimentConfig {
    /// Set one key from its text value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "experiment" => self.experiment = v.parse()?,
            "m" => self.m = parse(key, v)?,
            "pad" => self.pad = parse(key, v)?,
            "nx" => self.nx = parse(key, v)?,
            "ny" => self.ny = parse(key, v)?,
            "n_theta" => self.n_theta = parse(key, v)?,
            "n" => self.n = parse(key, v)?,
            "alpha" => self.alpha = parse(key, v)?,
            "interp" => self.interp = v.parse()?,
            "eps" => self.eps = parse(key, v)?,
            "ns" => self.ns = parse(key, v)?,
            "npsi" => self.npsi = parse(key, v)?,
            "input" => self.input = v.to_string(),
            "input_file" => {
                self.input_file = if v.is_empty() { None } else { Some(PathBuf::from(v)) }
            }
            "max_iter" => self.max_iter = parse(key, v)?,
            "stop_tol" => self.stop_tol = parse(key, v)?,
            "seed" => self.seed = parse(key, v)?,
            "spectrum_k" => self.spectrum_k = parse(key, v)?,
            "threads" => self.threads = parse(key, v)?,
            "output_dir" => self.output_dir = PathBuf::from(v),
            "config_version" => {
                if v != CONFIG_VERSION {
                    return Err(Error::Config(format!("unsupported config_version `{v}`")));
                }
            }
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Parse `key = value` lines over the defaults. `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", no + 1))
            })?;
            cfg.set(k, v)
                .map_err(|e| Error::Config(format!("line {}: {e}", no + 1)))?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    /// Serialise to the text format; `from_text(to_text())` is lossless.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("config_version = {CONFIG_VERSION}\n"));
        out.push_str(&format!("experiment = {}\n", self.experiment));
        out.push_str(&format!("m = {:?}\n", self.m));
        out.push_str(&format!("pad = {:?}\n", self.pad));
        out.push_str(&format!("nx = {}\n", self.nx));
        out.push_str(&format!("ny = {}\n", self.ny));
        out.push_str(&format!("n_theta = {}\n", self.n_theta));
        out.push_str(&format!("n = {}\n", self.n));
        out.push_str(&format!("alpha = {:?}\n", self.alpha));
        out.push_str(&format!("interp = {}\n", self.interp));
        out.push_str(&format!("eps = {:?}\n", self.eps));
        out.push_str(&format!("ns = {}\n", self.ns));
        out.push_str(&format!("npsi = {}\n", self.npsi));
        out.push_str(&format!("input = {}\n", self.input));
        if let Some(p) = &self.input_file {
            out.push_str(&format!("input_file = {}\n", p.display()));
        }
        out.push_str(&format!("max_iter = {}\n", self.max_iter));
        out.push_str(&format!("stop_tol = {:?}\n", self.stop_tol));
        out.push_str(&format!("seed = {}\n", self.seed));
        out.push_str(&format!("spectrum_k = {}\n", self.spectrum_k));
        out.push_str(&format!("threads = {}\n", self.threads));
        out.push_str(&format!("output_dir = {}\n", self.output_dir.display()));
        out
    }

    /// Check every parameter against the bounds of the module it feeds.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.m > 0.0 && self.m.is_finite()) {
            return bad(format!("m = {} violates m > 0", self.m));
        }
        if !(self.pad >= 2.0 && self.pad.is_finite()) {
            return bad(format!("pad = {} violates pad >= 2", self.pad));
        }
        if self.nx < 4 || self.ny < 4 {
            return bad(format!("nx = {}, ny = {} violate nx, ny >= 4", self.nx, self.ny));
        }
        if !(0.5..1.0).contains(&self.alpha) {
            return bad(format!("alpha = {} violates 1/2 <= alpha < 1", self.alpha));
        }
        if self.n_theta < 8 {
            return bad(format!("n_theta = {} violates n_theta >= 8", self.n_theta));
        }
        if matches!(self.experiment, Experiment::StripIterate | Experiment::StripSpectrum)
            && self.n >= self.ny
        {
            return bad(format!("n = {} violates n < ny = {}", self.n, self.ny));
        }
        if !(0.0..1.0).contains(&self.eps) {
            return bad(format!("eps = {} violates 0 <= eps < 1", self.eps));
        }
        if self.ns < 4 || self.npsi < 8 || !self.npsi.is_multiple_of(2) {
            return bad(format!(
                "ns = {}, npsi = {} violate ns >= 4 and even npsi >= 8",
                self.ns, self.npsi
            ));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be positive".into());
        }
        if !(self.stop_tol > 0.0 && self.stop_tol < 1.0) {
            return bad(format!("stop_tol = {} violates 0 < stop_tol < 1", self.stop_tol));
        }
        if self.experiment == Experiment::Annihilators && self.alpha != 0.5 {
            return bad(format!("annihilators require alpha = 1/2, got {}", self.alpha));
        }
        Ok(())
    }
}
