//! Verification harness and command line front end for the `spectral-ball` crate.
//!
//! Every suite is a deterministic function of its [`SuiteConfig`]: cases are seeded from
//! `(seed, n, case)` and evaluated in parallel, and the resulting [`Report`] is identical from
//! run to run apart from `wall_time`.

pub mod cli;
pub mod codec;
pub mod config;
pub mod error;
pub mod report;
pub mod suites;

pub use cli::run_cli;
pub use config::{SuiteConfig, SuiteName};
pub use error::{Result, VerifyError, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERICAL, EXIT_PASS};
pub use report::{CaseRecord, MetricSummary, Report};
pub use suites::{
    run_suite, suite_automorphisms, suite_corollary7, suite_equivariance, suite_lemma3,
    suite_lemma4, suite_lemma5, suite_lemma6, suite_squaremap,
};
