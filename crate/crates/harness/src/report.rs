use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use dsdeform_core::verification::{Bound, CheckReport};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// `null` when the residual is not finite.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub bound: BoundKind,
    pub pass: bool,
    pub metadata: BTreeMap<String, String>,
}

impl Check {
    pub fn from_report(r: &CheckReport, tolerance_override: Option<f64>) -> Self {
        let bound = match r.bound {
            Bound::Upper => BoundKind::Upper,
            Bound::Lower => BoundKind::Lower,
        };
        let (tolerance, pass) = match (bound, tolerance_override) {
            (BoundKind::Upper, Some(t)) => (t, r.max_residual <= t),
            _ => (r.tolerance, r.pass),
        };
        Self {
            name: r.name.clone(),
            max_residual: r.max_residual.is_finite().then_some(r.max_residual),
            tolerance,
            bound,
            pass,
            metadata: r.metadata.iter().cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Seeds {
    pub run: u64,
    pub suites: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub artifact: String,
    pub version: String,
    pub config: RunConfig,
    pub seeds: Seeds,
    pub pass: bool,
    pub suites: Vec<SuiteResult>,
    /// Wall-clock seconds per suite; the only nondeterministic field.
    pub timings: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    /// CSV with one row per check: suite, kappa, residual, tolerance, pass, check.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["suite", "kappa", "residual", "tolerance", "pass", "check"])?;
        for s in &self.suites {
            for c in &s.checks {
                let kappa = c.metadata.get("kappa").cloned().unwrap_or_default();
                let residual = c.max_residual.map_or_else(|| "nan".to_string(), |r| format!("{r:e}"));
                w.write_record([
                    s.name.as_str(),
                    &kappa,
                    &residual,
                    &format!("{:e}", c.tolerance),
                    if c.pass { "true" } else { "false" },
                    &c.name,
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Fixed-width table for terminals.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<14} {:<40} {:>6} {:>12} {:>10} {:>5}  bound", "suite", "check", "kappa", "residual", "tolerance", "");
        for suite in &self.suites {
            for c in &suite.checks {
                let kappa = c.metadata.get("kappa").map(String::as_str).unwrap_or("");
                let residual = c.max_residual.map_or_else(|| "nan".to_string(), |r| format!("{r:.3e}"));
                let bound = match c.bound {
                    BoundKind::Upper => "<=",
                    BoundKind::Lower => ">",
                };
                let _ = writeln!(
                    s,
                    "{:<14} {:<40} {:>6} {:>12} {:>10.1e} {:>5}  {}",
                    suite.name,
                    c.name,
                    kappa,
                    residual,
                    c.tolerance,
                    if c.pass { "PASS" } else { "FAIL" },
                    bound
                );
            }
        }
        let failed: usize = self.suites.iter().map(|s| s.checks.iter().filter(|c| !c.pass).count()).sum();
        let total: usize = self.suites.iter().map(|s| s.checks.len()).sum();
        let _ = writeln!(s, "{} of {total} checks passed", total - failed);
        s
    }
}

/// The report as a JSON value with the timings removed.
pub fn deterministic_payload(report: &RunReport) -> serde_json::Value {
    let mut v = serde_json::to_value(report).expect("report serializes");
    if let Some(map) = v.as_object_mut() {
        map.remove("timings");
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_only_touches_upper_bounds() {
        let up = CheckReport::upper("a", 0.5, 0.1);
        assert!(!Check::from_report(&up, None).pass);
        let relaxed = Check::from_report(&up, Some(1.0));
        assert!(relaxed.pass && relaxed.tolerance == 1.0);
        let low = CheckReport::lower("b", 0.5, 0.1);
        assert_eq!(Check::from_report(&low, Some(1.0)).tolerance, 0.1);
        let nan = CheckReport::upper("c", f64::NAN, 1.0);
        assert_eq!(Check::from_report(&nan, None).max_residual, None);
    }
}
