//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines always reach stdout.

use std::process::ExitCode;
use std::time::Instant;

use sbl_verify::{run_suite, Report, SuiteConfig, SuiteName};

const SEED: u64 = 20240601;

type Criterion = (&'static str, fn() -> Check);

struct Check {
    pass: bool,
    detail: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            pass: true,
            detail: Vec::new(),
        }
    }

    /// Folds in a report, requiring each named metric to have been measured at least once.
    fn report(&mut self, r: &Report, metrics: &[&str]) {
        self.pass &= r.pass;
        if r.errors > 0 || r.violations > 0 {
            self.detail.push(format!(
                "{}: {} errors, {} violations",
                r.suite, r.errors, r.violations
            ));
            for c in r.cases.iter().filter(|c| !c.ok()).take(3) {
                let why = c.error.clone().unwrap_or_else(|| c.violations.join("; "));
                self.detail
                    .push(format!("    n={} case {}: {why}", c.n, c.index));
            }
        }
        for name in metrics {
            let m = &r.metrics[*name];
            if m.cases == 0 {
                self.pass = false;
            }
            self.detail.push(format!(
                "{}/{name}: max {:.2e} (tol {:.0e}, {} samples){}",
                r.suite,
                m.max,
                m.tolerance,
                m.cases,
                if m.pass && m.cases > 0 { "" } else { " <--" }
            ));
        }
    }

    fn cases(&mut self, r: &Report, per_n: usize) {
        let dims = r.config.n_max - r.config.n_min + 1;
        if r.cases.len() != per_n * dims {
            self.pass = false;
            self.detail
                .push(format!("{}: ran {} cases", r.suite, r.cases.len()));
        }
    }
}

fn cfg(suite: SuiteName, lo: usize, hi: usize, cases: usize) -> SuiteConfig {
    SuiteConfig::new(suite)
        .with_n(lo, hi)
        .with_cases(cases)
        .with_seed(SEED)
}

fn run(c: &SuiteConfig) -> Report {
    run_suite(c).unwrap_or_else(|e| panic!("{} did not run: {e}", c.suite))
}

fn sigma_consistency() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::SigmaConsistency, 2, 6, 500));
    k.cases(&r, 500);
    k.report(&r, &["sigma_rel"]);
    k
}

fn membership() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::Membership, 2, 6, 500));
    k.cases(&r, 500);
    k.report(&r, &["mismatch", "truth_mismatch"]);
    k
}

fn equivariance() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::Equivariance, 2, 6, 200));
    k.cases(&r, 200);
    k.report(&r, &["exact", "series"]);
    k
}

fn differential() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::Lemma3, 2, 3, 50));
    k.cases(&r, 50);
    k.report(&r, &["sigma_preservation", "rank_deficit"]);
    k
}

fn radius_bound() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::Lemma4, 2, 4, 100));
    k.cases(&r, 100);
    k.report(&r, &["bound_violation", "chain_violation", "canonical_gap"]);
    k
}

fn block_merging() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::Lemma5, 2, 6, 100));
    k.cases(&r, 100);
    k.report(&r, &["sigma_drift"]);
    k
}

fn fibers() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::Lemma6, 2, 6, 100));
    k.cases(&r, 100);
    k.report(&r, &["sigma_residual"]);
    let r = run(&cfg(SuiteName::Corollary7, 2, 6, 100));
    k.cases(&r, 100);
    k.report(&r, &["dimension_error"]);
    k
}

fn square_map() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::Squaremap, 2, 2, 100));
    k.cases(&r, 100);
    k.report(&r, &["collapse_ratio", "fiber_consistency"]);
    k
}

fn automorphisms() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::Automorphisms, 2, 6, 100));
    k.cases(&r, 100);
    k.report(&r, &["round_trip", "pushforward", "invariance"]);
    k
}

fn oracles() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::Oracles, 4, 4, 100));
    k.cases(&r, 100);
    k.report(
        &r,
        &["jacobian_rel", "series_vs_exact", "faddeev_vs_cofactor"],
    );
    let r = run(&cfg(SuiteName::Oracles, 2, 3, 100));
    k.report(&r, &["faddeev_vs_cofactor"]);
    k
}

fn blaschke() -> Check {
    let mut k = Check::new();
    let r = run(&cfg(SuiteName::Blaschke, 2, 2, 200));
    k.cases(&r, 200);
    k.report(&r, &["boundary_modulus"]);
    k
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "sigma matches elementary symmetric functions of eigenvalues",
            sigma_consistency,
        ),
        (
            "membership in Omega_n agrees with membership in G_n",
            membership,
        ),
        (
            "holomorphic calculus is equivariant under sigma",
            equivariance,
        ),
        (
            "normalized differential preserves sigma and has full rank",
            differential,
        ),
        ("rho(A + zeta V)^2 bounds |zeta||1 + zeta|", radius_bound),
        (
            "block merging preserves sigma and ends non-derogatory",
            block_merging,
        ),
        (
            "fiber samples, tangent dimensions and the spanning set",
            fibers,
        ),
        ("square map collapses conjugated nilpotents", square_map),
        (
            "automorphisms round trip and sigma invariance",
            automorphisms,
        ),
        ("Jacobian, series and char poly oracles", oracles),
        (
            "Blaschke products have unit modulus on the circle",
            blaschke,
        ),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let k = check();
        println!(
            "{} {:>2}  {name}  ({:.1}s)",
            if k.pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
        for line in &k.detail {
            println!("          {line}");
        }
        if !k.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria pass in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
