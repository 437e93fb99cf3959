//! Suite selection and configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Result, VerifyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    SigmaConsistency,
    Membership,
    Equivariance,
    Lemma3,
    Lemma4,
    Lemma5,
    Lemma6,
    Corollary7,
    Squaremap,
    Automorphisms,
    Oracles,
    Blaschke,
}

impl SuiteName {
    pub const ALL: [SuiteName; 12] = [
        SuiteName::SigmaConsistency,
        SuiteName::Membership,
        SuiteName::Equivariance,
        SuiteName::Lemma3,
        SuiteName::Lemma4,
        SuiteName::Lemma5,
        SuiteName::Lemma6,
        SuiteName::Corollary7,
        SuiteName::Squaremap,
        SuiteName::Automorphisms,
        SuiteName::Oracles,
        SuiteName::Blaschke,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::SigmaConsistency => "sigma-consistency",
            SuiteName::Membership => "membership",
            SuiteName::Equivariance => "equivariance",
            SuiteName::Lemma3 => "lemma3",
            SuiteName::Lemma4 => "lemma4",
            SuiteName::Lemma5 => "lemma5",
            SuiteName::Lemma6 => "lemma6",
            SuiteName::Corollary7 => "corollary7",
            SuiteName::Squaremap => "squaremap",
            SuiteName::Automorphisms => "automorphisms",
            SuiteName::Oracles => "oracles",
            SuiteName::Blaschke => "blaschke",
        }
    }

    /// Pass thresholds, keyed by metric name. An infinite threshold marks a metric that is
    /// reported but never fails.
    pub fn default_tolerances(self) -> &'static [(&'static str, f64)] {
        match self {
            SuiteName::SigmaConsistency => &[("sigma_rel", 1e-8)],
            SuiteName::Membership => &[("mismatch", 0.5), ("truth_mismatch", 0.5)],
            SuiteName::Equivariance => &[("exact", 1e-8), ("series", 1e-6)],
            SuiteName::Lemma3 => &[("sigma_preservation", 1e-5), ("rank_deficit", 0.5)],
            SuiteName::Lemma4 => &[
                ("bound_violation", 1e-10),
                ("chain_violation", 1e-10),
                ("canonical_gap", 1e-12),
            ],
            SuiteName::Lemma5 => &[("sigma_drift", 1e-10), ("displacement", f64::INFINITY)],
            SuiteName::Lemma6 => &[("sigma_residual", 1e-9)],
            SuiteName::Corollary7 => &[("dimension_error", 0.5)],
            SuiteName::Squaremap => &[("collapse_ratio", 1e-10), ("fiber_consistency", 1e-12)],
            SuiteName::Automorphisms => &[
                ("round_trip", 1e-8),
                ("pushforward", 1e-8),
                ("invariance", 1e-8),
            ],
            SuiteName::Oracles => &[
                ("jacobian_rel", 1e-6),
                ("series_vs_exact", 1e-6),
                ("faddeev_vs_cofactor", 1e-12),
            ],
            SuiteName::Blaschke => &[("boundary_modulus", 1e-12)],
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = SuiteName::ALL.iter().map(|k| k.as_str()).collect();
                VerifyError::Config(format!(
                    "unknown suite {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Root-finder backward-error tolerance key.
pub const TOL_EIG: &str = "eig";
/// Numerical-rank tolerance key.
pub const TOL_RANK: &str = "rank";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub n_min: usize,
    pub n_max: usize,
    pub cases: usize,
    pub seed: u64,
    pub radius: f64,
    pub tolerances: BTreeMap<String, f64>,
    pub margin: f64,
}

impl SuiteConfig {
    /// Defaults: `n ∈ {2,…,5}`, 200 cases, radius 0.9, seed 1.
    pub fn new(suite: SuiteName) -> Self {
        let mut tolerances: BTreeMap<String, f64> = suite
            .default_tolerances()
            .iter()
            .map(|&(k, v)| (k.to_string(), v))
            .collect();
        tolerances.insert(TOL_EIG.into(), spectral_ball::linalg::DEFAULT_ROOT_TOL);
        tolerances.insert(TOL_RANK.into(), spectral_ball::linalg::DEFAULT_RANK_TOL);
        SuiteConfig {
            suite,
            n_min: 2,
            n_max: 5,
            cases: 200,
            seed: 1,
            radius: 0.9,
            tolerances,
            margin: 0.0,
        }
    }

    pub fn with_n(mut self, lo: usize, hi: usize) -> Self {
        self.n_min = lo;
        self.n_max = hi;
        self
    }

    pub fn with_cases(mut self, cases: usize) -> Self {
        self.cases = cases;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = radius;
        self
    }

    pub fn with_tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances.insert(key.to_string(), value);
        self
    }

    pub fn tol(&self, key: &str) -> f64 {
        self.tolerances
            .get(key)
            .copied()
            .unwrap_or_else(|| panic!("suite {} has no tolerance named {key:?}", self.suite))
    }

    pub fn dims(&self) -> std::ops::RangeInclusive<usize> {
        self.n_min..=self.n_max
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(VerifyError::Config(m));
        if self.n_min < 2 || self.n_max < self.n_min {
            return fail(format!(
                "dimension range must satisfy 2 ≤ A ≤ B, got {}..{}",
                self.n_min, self.n_max
            ));
        }
        if self.n_max > 12 {
            return fail(format!(
                "dimensions above 12 are not supported, got {}",
                self.n_max
            ));
        }
        if self.cases == 0 {
            return fail("cases must be at least 1".into());
        }
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return fail(format!("radius must lie in (0, 1), got {}", self.radius));
        }
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return fail(format!(
                "margin must be a non-negative number, got {}",
                self.margin
            ));
        }
        if let Some((k, v)) = self
            .tolerances
            .iter()
            .find(|(_, v)| v.is_nan() || **v <= 0.0)
        {
            return fail(format!("tolerance {k:?} must be positive, got {v}"));
        }
        Ok(())
    }
}

/// Parses `A..B` (inclusive) or a single dimension `A`.
pub fn parse_n_range(s: &str) -> Result<(usize, usize)> {
    let err = || VerifyError::Config(format!("expected a dimension range like 2..5, got {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| err());
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((num(a)?, num(b)?))
        }
        None => {
            let k = num(s)?;
            Ok((k, k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("2..5").unwrap(), (2, 5));
        assert_eq!(parse_n_range("2..=6").unwrap(), (2, 6));
        assert_eq!(parse_n_range("3").unwrap(), (3, 3));
        assert!(parse_n_range("a..b").is_err());
    }

    #[test]
    fn names_round_trip() {
        for s in SuiteName::ALL {
            assert_eq!(s.as_str().parse::<SuiteName>().unwrap(), s);
        }
        assert!("lemma9".parse::<SuiteName>().is_err());
    }

    #[test]
    fn validation() {
        assert!(SuiteConfig::new(SuiteName::Lemma4).validate().is_ok());
        assert!(SuiteConfig::new(SuiteName::Lemma4)
            .with_cases(0)
            .validate()
            .is_err());
        assert!(SuiteConfig::new(SuiteName::Lemma4)
            .with_n(1, 3)
            .validate()
            .is_err());
        assert!(SuiteConfig::new(SuiteName::Lemma4)
            .with_radius(1.0)
            .validate()
            .is_err());
        assert!(SuiteConfig::new(SuiteName::Lemma4)
            .with_tolerance("bound_violation", 0.0)
            .validate()
            .is_err());
    }
}
