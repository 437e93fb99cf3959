//! Deterministic randomized suites. Each case draws its inputs from its own generator, seeded by
//! a hash of the run seed, the dimension and the case number, so results do not depend on
//! scheduling.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use spectral_ball::calculus::{
    apply_exact, apply_series, equivariance_residual, lemma3_normalized_differential,
    normalized_differential_matrix, random_blaschke, random_mobius, CalculusMethod, DiscMap,
    MatrixArg, OmegaAut, DEFAULT_SERIES_MAX_TERMS,
};
use spectral_ball::fibers::{
    fiber_tangent_dim_tol, gaussian_matrix, lemma4_witness, lemma5_merge_all, lemma6_sample,
    random_basis, random_derogatory_spec, random_nilpotent_spec, random_realization, random_spec,
    rng_from_seed, t0_spanning_set, JordanRealization, JordanSpec, DEFAULT_COND_BOUND,
};
use spectral_ball::linalg::{char_poly, conjugate, eigenvalues, rank, RectMatrix};
use spectral_ball::spectral::{
    in_gn, in_omega, pi_n, sigma, sigma_jacobian, spectral_radius_tol, SymPoint,
};
use spectral_ball::{CMatrix, Result as CoreResult};

use crate::config::{SuiteConfig, SuiteName, TOL_EIG, TOL_RANK};
use crate::error::Result;
use crate::report::{CaseRecord, InputDigest, Report};

/// Step used for the normalized differential.
pub const LEMMA3_STEP: f64 = 1e-4;
/// Random directions per normalized-differential case.
pub const LEMMA3_DIRECTIONS: usize = 50;
/// Perturbation size for block merging.
pub const LEMMA5_EPS: f64 = 1e-3;
/// Condition bound of the basis conjugating the nilpotent samples.
pub const LEMMA4_COND_BOUND: f64 = 4.0;
/// Condition bound of the extra conjugator in the automorphism suite.
pub const AUT_COND_BOUND: f64 = 4.0;
/// Spectral radius bound for the series route.
pub const SERIES_RADIUS: f64 = 0.8;
/// Unit-circle samples in the Blaschke suite.
pub const BOUNDARY_SAMPLES: usize = 360;
/// Frobenius norm floor of the large nilpotent samples.
pub const LARGE_NILPOTENT_NORM: f64 = 1e3;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of case `i` at dimension `n`.
pub fn case_seed(seed: u64, n: usize, i: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ n as u64) ^ i as u64)
}

struct Case<'a> {
    cfg: &'a SuiteConfig,
    n: usize,
    i: usize,
    rng: ChaCha8Rng,
    rec: CaseRecord,
    digest: InputDigest,
}

type CaseFn = fn(&mut Case<'_>) -> CoreResult<()>;

fn dims(cfg: &SuiteConfig) -> Vec<usize> {
    match cfg.suite {
        SuiteName::Squaremap => vec![2],
        SuiteName::Blaschke => vec![cfg.n_min],
        _ => cfg.dims().collect(),
    }
}

fn case_fn(suite: SuiteName) -> CaseFn {
    match suite {
        SuiteName::SigmaConsistency => sigma_consistency_case,
        SuiteName::Membership => membership_case,
        SuiteName::Equivariance => equivariance_case,
        SuiteName::Lemma3 => lemma3_case,
        SuiteName::Lemma4 => lemma4_case,
        SuiteName::Lemma5 => lemma5_case,
        SuiteName::Lemma6 => lemma6_case,
        SuiteName::Corollary7 => corollary7_case,
        SuiteName::Squaremap => squaremap_case,
        SuiteName::Automorphisms => automorphisms_case,
        SuiteName::Oracles => oracles_case,
        SuiteName::Blaschke => blaschke_case,
    }
}

/// Runs one suite. Only configuration problems are errors; failing cases are recorded.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let jobs: Vec<(usize, usize)> = dims(cfg)
        .into_iter()
        .flat_map(|n| (0..cfg.cases).map(move |i| (n, i)))
        .collect();
    let f = case_fn(cfg.suite);
    let cases: Vec<CaseRecord> = jobs
        .par_iter()
        .enumerate()
        .map(|(index, &(n, i))| {
            let seed = case_seed(cfg.seed, n, i);
            let mut case = Case {
                cfg,
                n,
                i,
                rng: rng_from_seed(seed),
                rec: CaseRecord::new(index, n, seed),
                digest: InputDigest::new(),
            };
            if let Err(e) = f(&mut case) {
                case.rec.error = Some(e.to_string());
            }
            case.rec.digest = case.digest.finish();
            case.rec
        })
        .collect();
    Ok(Report::assemble(cfg, cases, start.elapsed()))
}

pub fn suite_equivariance(cfg: &SuiteConfig) -> Result<Report> {
    run_suite(&retag(cfg, SuiteName::Equivariance))
}

pub fn suite_lemma3(cfg: &SuiteConfig) -> Result<Report> {
    run_suite(&retag(cfg, SuiteName::Lemma3))
}

pub fn suite_lemma4(cfg: &SuiteConfig) -> Result<Report> {
    run_suite(&retag(cfg, SuiteName::Lemma4))
}

pub fn suite_lemma5(cfg: &SuiteConfig) -> Result<Report> {
    run_suite(&retag(cfg, SuiteName::Lemma5))
}

pub fn suite_lemma6(cfg: &SuiteConfig) -> Result<Report> {
    run_suite(&retag(cfg, SuiteName::Lemma6))
}

pub fn suite_corollary7(cfg: &SuiteConfig) -> Result<Report> {
    run_suite(&retag(cfg, SuiteName::Corollary7))
}

pub fn suite_squaremap(cfg: &SuiteConfig) -> Result<Report> {
    run_suite(&retag(cfg, SuiteName::Squaremap))
}

pub fn suite_automorphisms(cfg: &SuiteConfig) -> Result<Report> {
    run_suite(&retag(cfg, SuiteName::Automorphisms))
}

fn retag(cfg: &SuiteConfig, suite: SuiteName) -> SuiteConfig {
    if cfg.suite == suite {
        return cfg.clone();
    }
    let mut out = SuiteConfig::new(suite);
    out.n_min = cfg.n_min;
    out.n_max = cfg.n_max;
    out.cases = cfg.cases;
    out.seed = cfg.seed;
    out.radius = cfg.radius;
    out.margin = cfg.margin;
    for key in [TOL_EIG, TOL_RANK] {
        out.tolerances.insert(key.into(), cfg.tol(key));
    }
    out
}

fn rel_diff(a: &SymPoint, b: &SymPoint) -> f64 {
    a.max_abs_diff(b) / a.max_abs().max(1.0)
}

fn random_in_ball(c: &mut Case<'_>, radius: f64) -> JordanRealization {
    let spec = random_spec(c.n, radius, &mut c.rng);
    let r = random_realization(spec, DEFAULT_COND_BOUND, &mut c.rng);
    c.digest.tag("A").matrix(&r.realize());
    r
}

fn random_map(rng: &mut ChaCha8Rng) -> DiscMap {
    match rng.random_range(0..10) {
        0..5 => DiscMap::Mobius(random_mobius(0.9, rng)),
        5..9 => {
            let d = rng.random_range(1..=3);
            DiscMap::Blaschke(random_blaschke(d, 0.9, rng))
        }
        _ => DiscMap::square(),
    }
}

fn digest_map(d: &mut InputDigest, f: &DiscMap) {
    match f {
        DiscMap::Mobius(m) => d.tag("mobius").complex(m.c()).real(m.theta()),
        DiscMap::Blaschke(b) => d.tag("blaschke").complexes(b.zeros()).real(b.theta()),
        DiscMap::Series(s) => d.tag("series").complexes(s.coeffs()),
    };
}

fn sigma_consistency_case(c: &mut Case<'_>) -> CoreResult<()> {
    let r = random_in_ball(c, c.cfg.radius);
    let a = r.realize();
    let eig = eigenvalues(&a, c.cfg.tol(TOL_EIG))?;
    c.rec
        .residual("sigma_rel", rel_diff(&sigma(&a), &pi_n(&eig)?));
    Ok(())
}

/// Strictly upper triangular matrix conjugated by a diagonal scaling and a permutation, scaled
/// to Frobenius norm at least `LARGE_NILPOTENT_NORM`.
fn large_nilpotent(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let d: Vec<f64> = (0..n)
        .map(|_| 2f64.powf(rng.random_range(-1.0..1.0)))
        .collect();
    let g = gaussian_matrix(n, rng);
    let mut a = CMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            a[(perm[i], perm[j])] = g[(i, j)] * (d[i] / d[j]);
        }
    }
    let target = LARGE_NILPOTENT_NORM * (1.0 + 9.0 * rng.random::<f64>());
    let norm = a.frobenius_norm();
    a.scale_real(target / norm)
}

fn membership_case(c: &mut Case<'_>) -> CoreResult<()> {
    let n = c.n;
    let margin = c.cfg.margin;
    let (a, truth_radius) = match c.i % 3 {
        0 => {
            let r = random_in_ball(c, c.cfg.radius);
            let rho = r
                .spec()
                .eigenvalues()
                .iter()
                .map(|l| l.norm())
                .fold(0.0, f64::max);
            (r.realize(), rho)
        }
        1 => {
            let spec = random_spec(n, 1.4, &mut c.rng);
            let r = random_realization(spec, DEFAULT_COND_BOUND, &mut c.rng);
            let rho = r
                .spec()
                .eigenvalues()
                .iter()
                .map(|l| l.norm())
                .fold(0.0, f64::max);
            (r.realize(), rho)
        }
        _ => {
            let a = large_nilpotent(n, &mut c.rng);
            if a.frobenius_norm() < LARGE_NILPOTENT_NORM {
                c.rec
                    .violation("large nilpotent sample below the norm floor");
            }
            (a, 0.0)
        }
    };
    c.digest.tag("A").matrix(&a);
    let by_matrix = in_omega(&a, margin)?;
    let by_point = in_gn(&sigma(&a), margin)?;
    c.rec
        .residual("mismatch", if by_matrix == by_point { 0.0 } else { 1.0 });
    let bound = 1.0 - margin;
    if (truth_radius - bound).abs() > 1e-6 {
        let truth = truth_radius < bound;
        c.rec
            .residual("truth_mismatch", if truth == by_matrix { 0.0 } else { 1.0 });
    }
    Ok(())
}

fn equivariance_case(c: &mut Case<'_>) -> CoreResult<()> {
    let f = random_map(&mut c.rng);
    digest_map(&mut c.digest, &f);
    let a = random_in_ball(c, c.cfg.radius).realize();
    c.rec.residual(
        "exact",
        equivariance_residual(&f, &a, CalculusMethod::Exact)?,
    );
    let b = random_in_ball(c, c.cfg.radius.min(SERIES_RADIUS)).realize();
    c.rec.residual(
        "series",
        equivariance_residual(&f, &b, CalculusMethod::Series)?,
    );
    Ok(())
}

/// A map with `f(0) = 0` and `f′(0) ≠ 0`.
fn origin_fixing_map(rng: &mut ChaCha8Rng) -> DiscMap {
    match rng.random_range(0..3) {
        0 => {
            let extra = rng.random_range(0..=2);
            let mut zeros = vec![C64::new(0.0, 0.0)];
            for _ in 0..extra {
                let r = 0.1 + 0.8 * rng.random::<f64>();
                zeros.push(C64::from_polar(r, 2.0 * PI * rng.random::<f64>()));
            }
            DiscMap::blaschke(zeros, 2.0 * PI * rng.random::<f64>()).expect("zeros inside disc")
        }
        1 => {
            let t = 0.2 + 0.8 * rng.random::<f64>();
            let c1 = C64::from_polar(t, 2.0 * PI * rng.random::<f64>());
            let c2 = C64::from_polar(1.0 - t, 2.0 * PI * rng.random::<f64>());
            DiscMap::series(vec![C64::new(0.0, 0.0), c1, c2]).expect("|c1| + |c2| = 1")
        }
        _ => DiscMap::mobius(C64::new(0.0, 0.0), 2.0 * PI * rng.random::<f64>()).expect("rotation"),
    }
}

fn lemma3_case(c: &mut Case<'_>) -> CoreResult<()> {
    let n = c.n;
    let f = origin_fixing_map(&mut c.rng);
    digest_map(&mut c.digest, &f);
    for _ in 0..LEMMA3_DIRECTIONS {
        let v = gaussian_matrix(n, &mut c.rng);
        c.digest.matrix(&v);
        let phi = lemma3_normalized_differential(&f, &v, LEMMA3_STEP)?;
        c.rec
            .residual("sigma_preservation", rel_diff(&sigma(&v), &sigma(&phi)));
    }
    let d = normalized_differential_matrix(&f, n, LEMMA3_STEP)?;
    let r = rank(&d, c.cfg.tol(TOL_RANK));
    c.rec.residual("rank_deficit", (n * n - r) as f64);
    Ok(())
}

fn lemma4_grid() -> Vec<C64> {
    (0..8)
        .flat_map(|k| {
            let modulus = 0.05 + 0.45 * k as f64 / 7.0;
            (0..8).map(move |p| C64::from_polar(modulus, 2.0 * PI * p as f64 / 8.0))
        })
        .collect()
}

fn lemma4_case(c: &mut Case<'_>) -> CoreResult<()> {
    let n = c.n;
    let eig_tol = c.cfg.tol(TOL_EIG);
    let canonical = n == 2 && c.i == 0;
    let a = if canonical {
        CMatrix::elementary(2, 0, 1)
    } else {
        let spec = random_nilpotent_spec(n, &mut c.rng);
        let scale = 2f64.powf(c.rng.random_range(-1.0..1.0));
        random_realization(spec, LEMMA4_COND_BOUND, &mut c.rng)
            .realize()
            .scale_real(scale)
    };
    c.digest.tag("A").matrix(&a);
    let w = lemma4_witness(&a)?;
    let (v1, v2) = (w.v1(), w.v2());
    for zeta in lemma4_grid() {
        let m = &a + &w.v.scale(zeta);
        let m2 = &m * &m;
        let rho = spectral_radius_tol(&m, eig_tol)?;
        let rho_sq = spectral_radius_tol(&m2, eig_tol)?;
        let lhs = zeta.norm() * (1.0 + zeta).norm();
        c.rec
            .residual("bound_violation", (lhs - rho * rho).max(0.0));
        c.rec.residual(
            "chain_violation",
            (lhs - rho_sq).max(rho_sq - rho * rho).max(0.0),
        );
        let k = zeta * (1.0 + zeta);
        let scale = m2.frobenius_norm().max(1.0);
        for v in [&v1, &v2] {
            let img = m2.matvec(v);
            let err = img
                .iter()
                .zip(v.iter())
                .map(|(x, y)| (x - k * y).norm())
                .fold(0.0, f64::max);
            let vn = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
            if err > 1e-10 * scale * vn {
                c.rec.violation(format!(
                    "(A+ζV)² v ≠ ζ(1+ζ) v at ζ = {zeta}: error {err:.2e}"
                ));
            }
        }
        if canonical {
            c.rec.residual("canonical_gap", (rho * rho - lhs).abs());
        }
    }
    Ok(())
}

fn lemma5_case(c: &mut Case<'_>) -> CoreResult<()> {
    let n = c.n;
    let spec = random_derogatory_spec(n, c.cfg.radius, &mut c.rng);
    let r = random_realization(spec, DEFAULT_COND_BOUND, &mut c.rng);
    c.digest.tag("A").matrix(&r.realize());
    let path = lemma5_merge_all(&r, LEMMA5_EPS)?;
    let mut prev = sigma(&path[0].realize());
    for w in path.windows(2) {
        let (before, after) = (w[0].spec().block_count(), w[1].spec().block_count());
        if after >= before {
            c.rec
                .violation(format!("block count did not decrease: {before} -> {after}"));
        }
        let (a, b) = (w[0].realize(), w[1].realize());
        c.rec.residual("displacement", (&b - &a).frobenius_norm());
        let s = sigma(&b);
        c.rec.residual("sigma_drift", s.max_abs_diff(&prev));
        prev = s;
    }
    if path.len() < 2 {
        c.rec.violation("derogatory sample needed no merge");
    }
    let last = path.last().expect("nonempty path");
    let b = last.realize();
    let rank_tol = c.cfg.tol(TOL_RANK);
    for g in last.spec().groups() {
        let r = rank(&b.shift(-g.eigenvalue), rank_tol);
        if r != n - 1 {
            c.rec.violation(format!(
                "terminal matrix is derogatory at {}: rank(B − λI) = {r}",
                g.eigenvalue
            ));
        }
    }
    Ok(())
}

fn random_fiber_parameters(c: &mut Case<'_>) -> (JordanSpec, CMatrix) {
    let spec = random_spec(c.n, c.cfg.radius, &mut c.rng);
    let basis = random_basis(c.n, DEFAULT_COND_BOUND, &mut c.rng);
    c.digest
        .tag("zeta")
        .complexes(&spec.eigenvalues())
        .matrix(&basis);
    (spec, basis)
}

fn lemma6_case(c: &mut Case<'_>) -> CoreResult<()> {
    let n = c.n;
    let rank_tol = c.cfg.tol(TOL_RANK);
    let (spec, basis) = random_fiber_parameters(c);
    let zetas = spec.eigenvalues();
    let a = lemma6_sample(&zetas, &basis)?;
    c.rec
        .residual("sigma_residual", sigma(&a).max_abs_diff(&pi_n(&zetas)?));
    for g in spec.groups() {
        let r = rank(&a.shift(-g.eigenvalue), rank_tol);
        if r != n - 1 {
            c.rec
                .violation(format!("sample is derogatory at {}", g.eigenvalue));
        }
    }
    let jr = sigma_jacobian(&a).rank(rank_tol);
    if jr != n {
        c.rec.violation(format!("rank σ′(A) = {jr}, expected {n}"));
    }
    let dim = fiber_tangent_dim_tol(&a, rank_tol);
    if dim != n * n - n {
        c.rec
            .violation(format!("tangent dimension {dim}, expected {}", n * n - n));
    }
    Ok(())
}

fn corollary7_case(c: &mut Case<'_>) -> CoreResult<()> {
    let n = c.n;
    let rank_tol = c.cfg.tol(TOL_RANK);
    let (spec, basis) = random_fiber_parameters(c);
    let a = lemma6_sample(&spec.eigenvalues(), &basis)?;
    let dim = fiber_tangent_dim_tol(&a, rank_tol);
    c.rec
        .residual("dimension_error", dim.abs_diff(n * n - n) as f64);
    if c.i == 0 {
        let zero_dim = fiber_tangent_dim_tol(&CMatrix::zeros(n), rank_tol);
        if zero_dim <= n * n - n {
            c.rec.violation(format!(
                "tangent dimension at 0 is {zero_dim}, expected more than {}",
                n * n - n
            ));
        }
        let rows: Vec<Vec<C64>> = t0_spanning_set(n)?.iter().map(CMatrix::vectorize).collect();
        let r = rank(&RectMatrix::from_row_vectors(&rows)?, rank_tol);
        c.rec
            .residual("dimension_error", r.abs_diff(n * n - n + 1) as f64);
    }
    Ok(())
}

fn squaremap_case(c: &mut Case<'_>) -> CoreResult<()> {
    let scale = 10f64.powf(c.rng.random_range(-1.0..1.0));
    let s = random_basis(2, DEFAULT_COND_BOUND, &mut c.rng);
    let a = conjugate(&s, &CMatrix::elementary(2, 0, 1))?.scale_real(scale);
    c.digest.tag("A").matrix(&a);
    let sq = DiscMap::square();
    let fa = apply_exact(&sq, &a)?;
    let ratio = fa.frobenius_norm() / a.frobenius_norm().powi(2);
    c.rec.residual("collapse_ratio", ratio);

    let (spec, basis) = random_fiber_parameters(c);
    let b = lemma6_sample(&spec.eigenvalues(), &basis)?;
    c.rec.residual(
        "fiber_consistency",
        equivariance_residual(&sq, &b, CalculusMethod::Exact)?,
    );
    Ok(())
}

fn automorphisms_case(c: &mut Case<'_>) -> CoreResult<()> {
    let n = c.n;
    let r = random_in_ball(c, c.cfg.radius);
    let a = r.realize();
    let m = random_mobius(0.9, &mut c.rng);
    let s = random_basis(n, AUT_COND_BOUND, &mut c.rng);
    let transpose = c.rng.random::<bool>();
    c.digest
        .tag("aut")
        .complex(m.c())
        .real(m.theta())
        .matrix(&s)
        .real(if transpose { 1.0 } else { 0.0 });
    let aut = OmegaAut::new(m, s.clone(), transpose)?;

    let b = aut.apply(&r)?;
    let nodes: Vec<(C64, usize)> = r
        .spec()
        .groups()
        .iter()
        .map(|g| (g.eigenvalue, g.sizes[0]))
        .collect();
    let img = aut.image_nodes(&nodes);
    let back = aut.inverse().apply(MatrixArg::Hinted {
        matrix: &b,
        nodes: &img,
    })?;
    c.rec
        .residual("round_trip", back.max_abs_diff(&a) / a.max_abs().max(1.0));

    let pushed: Vec<C64> = r.spec().eigenvalues().iter().map(|&l| m.eval(l)).collect();
    c.rec
        .residual("pushforward", rel_diff(&pi_n(&pushed)?, &sigma(&b)));

    let sa = sigma(&a);
    c.rec
        .residual("invariance", rel_diff(&sa, &sigma(&a.transpose())));
    c.rec
        .residual("invariance", rel_diff(&sa, &sigma(&conjugate(&s, &a)?)));
    Ok(())
}

/// `det(λI − A)` coefficients (ascending) by exact principal-minor sums.
pub fn integer_char_poly(a: &[Vec<i64>]) -> Vec<i128> {
    let n = a.len();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let k = idx.len();
        let sub: Vec<Vec<i128>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| a[i][j] as i128).collect())
            .collect();
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        coeffs[n - k] += sign * cofactor_det(&sub);
    }
    coeffs
}

fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        k => (0..k)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor_det(&minor)
            })
            .sum(),
    }
}

fn oracles_case(c: &mut Case<'_>) -> CoreResult<()> {
    let n = c.n;
    // Analytic Jacobian against central differences.
    let a = gaussian_matrix(n, &mut c.rng).scale_real(0.5);
    c.digest.tag("J").matrix(&a);
    let jac = sigma_jacobian(&a);
    let h = 1e-4;
    let mut err: f64 = 0.0;
    let mut big: f64 = 0.0;
    for r in 0..n {
        for s in 0..n {
            let e = CMatrix::elementary(n, r, s).scale_real(h);
            let plus = sigma(&(&a + &e));
            let minus = sigma(&(&a - &e));
            for j in 1..=n {
                let fd = (plus.coords()[j - 1] - minus.coords()[j - 1]) / (2.0 * h);
                let an = jac.entry(j, r, s);
                err = err.max((fd - an).norm());
                big = big.max(an.norm());
            }
        }
    }
    c.rec
        .residual("jacobian_rel", err / big.max(f64::MIN_POSITIVE));

    // Series against Hermite interpolation.
    let f = random_map(&mut c.rng);
    digest_map(&mut c.digest, &f);
    let r = random_in_ball(c, c.cfg.radius.min(SERIES_RADIUS));
    let exact = apply_exact(&f, &r)?;
    let series = apply_series(&f, &r.realize(), 1e-15, DEFAULT_SERIES_MAX_TERMS)?;
    c.rec.residual(
        "series_vs_exact",
        exact.max_abs_diff(&series) / exact.max_abs().max(1.0),
    );

    // Faddeev–LeVerrier against exact integer expansion.
    if n <= 4 {
        let ints: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| c.rng.random_range(-9..=9)).collect())
            .collect();
        let m = CMatrix::from_rows(
            &ints
                .iter()
                .map(|row| row.iter().map(|&x| C64::new(x as f64, 0.0)).collect())
                .collect::<Vec<_>>(),
        )?;
        c.digest.tag("Z").matrix(&m);
        let exact = integer_char_poly(&ints);
        let fl = char_poly(&m);
        let worst = fl
            .coeffs()
            .iter()
            .zip(&exact)
            .map(|(x, &y)| (x - C64::new(y as f64, 0.0)).norm())
            .fold(0.0, f64::max);
        c.rec.residual("faddeev_vs_cofactor", worst);
    }
    Ok(())
}

fn blaschke_case(c: &mut Case<'_>) -> CoreResult<()> {
    let degree = 1 + c.i % 5;
    let b = random_blaschke(degree, 0.95, &mut c.rng);
    c.digest.tag("B").complexes(b.zeros()).real(b.theta());
    c.rec.residual(
        "boundary_modulus",
        b.boundary_modulus_deviation(BOUNDARY_SAMPLES),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_char_poly_small() {
        // [[1, 2], [3, 4]]: λ² − 5λ − 2.
        assert_eq!(
            integer_char_poly(&[vec![1, 2], vec![3, 4]]),
            vec![-2, -5, 1]
        );
    }

    #[test]
    fn seeds_differ() {
        assert_ne!(case_seed(1, 2, 0), case_seed(1, 2, 1));
        assert_ne!(case_seed(1, 2, 0), case_seed(1, 3, 0));
        assert_ne!(case_seed(1, 2, 0), case_seed(2, 2, 0));
    }

    #[test]
    fn identity_map_has_zero_residual() {
        let a = CMatrix::diag(&[C64::new(0.3, 0.0), C64::new(-0.4, 0.1)]);
        let r = equivariance_residual(&DiscMap::identity(), &a, CalculusMethod::Exact).unwrap();
        assert!(r < 1e-15);
    }

    #[test]
    fn grid_shape() {
        let g = lemma4_grid();
        assert_eq!(g.len(), 64);
        assert!((g[0].norm() - 0.05).abs() < 1e-15);
        assert!((g[63].norm() - 0.5).abs() < 1e-15);
    }
}
