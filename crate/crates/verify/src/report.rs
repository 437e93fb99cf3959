//! Per-case records and suite reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use spectral_ball::CMatrix;

use crate::config::SuiteConfig;

/// SHA-256 over the numeric inputs of a case.
#[derive(Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tag(&mut self, s: &str) -> &mut Self {
        self.0.update((s.len() as u64).to_le_bytes());
        self.0.update(s.as_bytes());
        self
    }

    pub fn real(&mut self, x: f64) -> &mut Self {
        self.0.update(x.to_le_bytes());
        self
    }

    pub fn complex(&mut self, c: C64) -> &mut Self {
        self.real(c.re).real(c.im)
    }

    pub fn complexes(&mut self, cs: &[C64]) -> &mut Self {
        self.0.update((cs.len() as u64).to_le_bytes());
        for &c in cs {
            self.complex(c);
        }
        self
    }

    pub fn matrix(&mut self, a: &CMatrix) -> &mut Self {
        self.complexes(a.as_slice())
    }

    pub fn finish(&self) -> String {
        hex::encode(self.0.clone().finalize())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseRecord {
    pub index: usize,
    pub n: usize,
    pub seed: u64,
    pub digest: String,
    pub residuals: BTreeMap<String, f64>,
    pub violations: Vec<String>,
    pub error: Option<String>,
}

impl CaseRecord {
    pub fn new(index: usize, n: usize, seed: u64) -> Self {
        CaseRecord {
            index,
            n,
            seed,
            digest: String::new(),
            residuals: BTreeMap::new(),
            violations: Vec::new(),
            error: None,
        }
    }

    /// Records `value` under `metric`, keeping the largest value seen.
    pub fn residual(&mut self, metric: &str, value: f64) {
        let v = if value.is_nan() { f64::INFINITY } else { value };
        let slot = self.residuals.entry(metric.to_string()).or_insert(v);
        if v > *slot {
            *slot = v;
        }
    }

    pub fn violation(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn ok(&self) -> bool {
        self.error.is_none() && self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricSummary {
    pub max: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: SuiteConfig,
    pub cases: Vec<CaseRecord>,
    pub metrics: BTreeMap<String, MetricSummary>,
    /// Largest residual of the suite's primary metric.
    pub max_residual: f64,
    pub tolerance: f64,
    pub errors: usize,
    pub violations: usize,
    pub pass: bool,
    pub wall_time: f64,
}

impl Report {
    /// Pass requires every metric within tolerance, no violations and no errored case.
    pub fn assemble(cfg: &SuiteConfig, cases: Vec<CaseRecord>, wall: Duration) -> Report {
        let mut metrics = BTreeMap::new();
        for &(name, _) in cfg.suite.default_tolerances() {
            let tolerance = cfg.tol(name);
            let values: Vec<f64> = cases
                .iter()
                .filter_map(|c| c.residuals.get(name).copied())
                .collect();
            let max = values.iter().copied().fold(0.0, f64::max);
            metrics.insert(
                name.to_string(),
                MetricSummary {
                    max,
                    tolerance,
                    cases: values.len(),
                    pass: max <= tolerance,
                },
            );
        }
        let primary = cfg.suite.default_tolerances()[0].0;
        let errors = cases.iter().filter(|c| c.error.is_some()).count();
        let violations = cases.iter().map(|c| c.violations.len()).sum();
        let pass = errors == 0 && violations == 0 && metrics.values().all(|m| m.pass);
        Report {
            suite: cfg.suite.to_string(),
            config: cfg.clone(),
            max_residual: metrics[primary].max,
            tolerance: metrics[primary].tolerance,
            metrics,
            cases,
            errors,
            violations,
            pass,
            wall_time: wall.as_secs_f64(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// JSON with `wall_time` removed; identical inputs give identical values.
    pub fn to_json_deterministic(&self) -> Value {
        let mut v = self.to_json();
        if let Value::Object(m) = &mut v {
            m.remove("wall_time");
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<18} {}  max_residual={:.3e} (tol {:.1e})  cases={} errors={} violations={}  {:.2}s",
            self.suite,
            if self.pass { "PASS" } else { "FAIL" },
            self.max_residual,
            self.tolerance,
            self.cases.len(),
            self.errors,
            self.violations,
            self.wall_time
        );
        for (name, m) in &self.metrics {
            let tol = if m.tolerance.is_finite() {
                format!("{:.1e}", m.tolerance)
            } else {
                "none".to_string()
            };
            let _ = writeln!(
                s,
                "    {:<20} max={:.3e} tol={tol} over {} cases{}",
                name,
                m.max,
                m.cases,
                if m.pass {
                    ""
                } else {
                    "  <-- exceeds tolerance"
                }
            );
        }
        for c in self.cases.iter().filter(|c| !c.ok()).take(5) {
            let what = c.error.clone().unwrap_or_else(|| c.violations.join("; "));
            let _ = writeln!(
                s,
                "    case {} (n={}, seed={}): {}",
                c.index, c.n, c.seed, what
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SuiteName;

    #[test]
    fn pass_logic() {
        let cfg = SuiteConfig::new(SuiteName::Blaschke);
        let mut a = CaseRecord::new(0, 2, 1);
        a.residual("boundary_modulus", 1e-15);
        let r = Report::assemble(&cfg, vec![a.clone()], Duration::ZERO);
        assert!(r.pass);
        let mut b = CaseRecord::new(1, 2, 2);
        b.residual("boundary_modulus", f64::NAN);
        let r = Report::assemble(&cfg, vec![a.clone(), b], Duration::ZERO);
        assert!(!r.pass);
        let mut c = CaseRecord::new(1, 2, 2);
        c.error = Some("boom".into());
        assert!(!Report::assemble(&cfg, vec![a, c], Duration::ZERO).pass);
    }

    #[test]
    fn digest_is_stable() {
        let a = CMatrix::identity(2);
        let d1 = InputDigest::new().tag("x").matrix(&a).finish();
        let d2 = InputDigest::new().tag("x").matrix(&a).finish();
        assert_eq!(d1, d2);
        assert_eq!(d1.len(), 64);
        assert_ne!(d1, InputDigest::new().tag("y").matrix(&a).finish());
    }
}
