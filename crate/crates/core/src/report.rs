//! Run summaries (`summary.json`) and plot-ready tables (`series.csv`,
//! `pairs.csv`).

use crate::config::ExperimentConfig;
use crate::error::Result;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// Schema identifier stamped into every summary.
pub const SCHEMA_ID: &str = "strip-bergman/summary/v1";

/// JSON schema of `summary.json`.
pub const SUMMARY_SCHEMA: &str = include_str!("../schema/summary.schema.json");

/// Warn when more than this share of the squared norm sits in the padding.
pub const TRUNCATION_WARN: f64 = 1e-10;

/// One named assertion with its measured value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    /// Passes when `value <= threshold`.
    pub fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold,
            pass: value <= threshold,
            detail: String::new(),
        }
    }

    /// Passes when `value >= threshold`.
    pub fn at_least(name: &str, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold,
            pass: value >= threshold,
            detail: String::new(),
        }
    }

    pub fn flag(name: &str, ok: bool) -> Self {
        Self {
            name: name.into(),
            value: if ok { 1.0 } else { 0.0 },
            threshold: 1.0,
            pass: ok,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Contents of `summary.json`.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub schema: &'static str,
    pub experiment: String,
    pub config: ExperimentConfig,
    pub checks: Vec<Check>,
    pub metrics: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
    pub truncated_mass: Option<f64>,
    pub all_pass: bool,
}

impl Summary {
    pub fn new(config: &ExperimentConfig) -> Self {
        Self {
            schema: SCHEMA_ID,
            experiment: config.experiment.to_string(),
            config: config.clone(),
            checks: Vec::new(),
            metrics: BTreeMap::new(),
            warnings: Vec::new(),
            truncated_mass: None,
            all_pass: true,
        }
    }

    pub fn check(&mut self, c: Check) {
        self.all_pass &= c.pass;
        self.checks.push(c);
    }

    pub fn metric(&mut self, name: &str, value: f64) {
        self.metrics.insert(name.into(), value);
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    /// Record the truncated mass and warn when it is not negligible.
    pub fn truncation(&mut self, mass: f64) {
        self.truncated_mass = Some(mass);
        if mass > TRUNCATION_WARN {
            self.warn(format!(
                "input carries {mass:.3e} of its squared norm outside |x| <= M"
            ));
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serialises") + "\n"
    }
}

/// A CSV table with a documenting comment line.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub comment: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(comment: &str, columns: &[&str]) -> Self {
        Self {
            comment: comment.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.comment);
        let _ = writeln!(out, "{}", self.columns.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }
}

/// Format a float for CSV output with full round-trip precision.
pub fn num(v: f64) -> String {
    format!("{v:e}")
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub summary: Summary,
    pub series: Option<Table>,
    pub pairs: Option<Table>,
}

/// Write `summary.json` and whichever tables exist into `dir`.
pub fn emit_report(dir: &Path, out: &RunOutput) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("summary.json"), out.summary.to_json())?;
    if let Some(t) = &out.series {
        std::fs::write(dir.join("series.csv"), t.to_csv())?;
    }
    if let Some(t) = &out.pairs {
        std::fs::write(dir.join("pairs.csv"), t.to_csv())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_clears_all_pass() {
        let mut s = Summary::new(&ExperimentConfig::default());
        s.check(Check::at_most("a", 1.0, 2.0));
        assert!(s.all_pass);
        s.check(Check::at_least("b", 1.0, 2.0));
        assert!(!s.all_pass);
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new("columns: a, b", &["a", "b"]);
        t.push(vec![num(1.5), num(2.0)]);
        assert_eq!(t.to_csv(), "# columns: a, b\na,b\n1.5e0,2e0\n");
    }

    #[test]
    fn schema_is_valid_json() {
        let v: serde_json::Value = serde_json::from_str(SUMMARY_SCHEMA).unwrap();
        assert_eq!(v["$id"], SCHEMA_ID);
    }
}
