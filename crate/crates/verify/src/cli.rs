//! The `sbl` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spectral_ball::calculus::{
    apply_exact, apply_series, equivariance_residual, CalculusMethod, DEFAULT_SERIES_MAX_TERMS,
    DEFAULT_SERIES_TOL,
};
use spectral_ball::fibers::{
    fiber_tangent_dim_tol, is_nonderogatory, lemma6_sample_from_point, random_basis, rng_from_seed,
    JordanRealization, StructureTols, DEFAULT_COND_BOUND,
};
use spectral_ball::linalg::{eigenvalues, DEFAULT_RANK_TOL, DEFAULT_ROOT_TOL};
use spectral_ball::spectral::{in_gn, in_omega, pi_n, sigma, spectral_radius_tol, SymPoint};
use spectral_ball::CMatrix;

use crate::codec::{
    complex_list_from_json, complex_list_to_json, discmap_from_json, jordan_spec_from_json,
    matrix_from_json, matrix_to_json, parse_json, sympoint_to_json,
};
use crate::config::{parse_n_range, SuiteConfig, SuiteName, TOL_EIG, TOL_RANK};
use crate::error::{Result, VerifyError, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use crate::report::Report;
use crate::suites::run_suite;

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "SBL_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "sbl",
    version,
    about = "Spectral unit ball toolkit and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic data of a matrix: σ(A), eigenvalues, ρ(A), membership in Ω_n.
    Spec(InputArgs),
    /// Membership of a matrix in Ω_n, or of a point {"z": [...]} in G_n.
    Member(InputArgs),
    /// Apply a holomorphic self-map of the disc to a matrix.
    Apply(ApplyArgs),
    /// Sample a non-derogatory matrix in a fiber, or realize a Jordan specification.
    Fiber(FiberArgs),
    /// Run a verification suite, or all of them.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Series,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Spectral radius margin for membership tests.
    #[arg(long, default_value_t = 0.0)]
    margin: f64,
    /// Eigenvalue tolerance.
    #[arg(long = "tol-eig")]
    tol_eig: Option<f64>,
    /// Relative rank tolerance.
    #[arg(long = "tol-rank")]
    tol_rank: Option<f64>,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// JSON input file, `-` for standard input.
    #[arg(long, default_value = "-")]
    input: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ApplyArgs {
    #[arg(long, default_value = "-")]
    input: String,
    /// Disc map as inline JSON or a path to a JSON file.
    #[arg(long)]
    map: String,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct FiberArgs {
    #[arg(long, default_value = "-")]
    input: String,
    /// Seed for the random basis.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: String,
    /// Dimension range `A..B`, `A..=B` or a single `A`.
    #[arg(long)]
    n: Option<String>,
    /// Cases per dimension.
    #[arg(long)]
    cases: Option<usize>,
    /// Base seed; `SBL_SEED` takes precedence when set.
    #[arg(long)]
    seed: Option<u64>,
    /// Spectral radius bound for sampled matrices, in (0, 1).
    #[arg(long)]
    radius: Option<f64>,
    #[command(flatten)]
    common: Common,
}

/// Runs the command line and returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            // A closed pipe on stdout is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn pass(text: String) -> Self {
        Output {
            text,
            code: EXIT_PASS,
        }
    }
}

fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Spec(a) => cmd_spec(a),
        Command::Member(a) => cmd_member(a),
        Command::Apply(a) => cmd_apply(a),
        Command::Fiber(a) => cmd_fiber(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn read_source(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| VerifyError::Io {
                path: "<stdin>".into(),
                source: e,
            })?;
        Ok(s)
    } else {
        fs::read_to_string(src).map_err(|e| VerifyError::Io {
            path: src.into(),
            source: e,
        })
    }
}

fn read_json(src: &str) -> Result<Value> {
    parse_json(&read_source(src)?)
}

fn inline_or_file(arg: &str) -> Result<Value> {
    if arg.trim_start().starts_with('{') {
        parse_json(arg)
    } else {
        read_json(arg)
    }
}

fn checked_tol(v: Option<f64>, default: f64, flag: &str) -> Result<f64> {
    match v {
        None => Ok(default),
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(VerifyError::Config(format!(
            "--{flag} must be positive, got {t}"
        ))),
    }
}

fn check_margin(m: f64) -> Result<f64> {
    if (0.0..1.0).contains(&m) {
        Ok(m)
    } else {
        Err(VerifyError::Config(format!(
            "--margin must lie in [0, 1), got {m}"
        )))
    }
}

fn fmt_c(z: num_complex::Complex64) -> String {
    // Adding zero turns -0 into +0.
    let (re, im) = (z.re + 0.0, z.im + 0.0);
    if im.is_sign_negative() {
        format!("{re:.12e}-{:.12e}i", -im)
    } else {
        format!("{re:.12e}+{im:.12e}i")
    }
}

fn fmt_list(zs: &[num_complex::Complex64]) -> String {
    let parts: Vec<String> = zs.iter().map(|&z| fmt_c(z)).collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_matrix(a: &CMatrix) -> String {
    (0..a.n())
        .map(|i| format!("  {}", fmt_list(a.row(i))))
        .collect::<Vec<_>>()
        .join("\n")
}

fn render(format: Format, json: Value, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&json).expect("serializable"),
        Format::Text => text,
    }
}

fn cmd_spec(args: InputArgs) -> Result<Output> {
    let c = &args.common;
    let margin = check_margin(c.margin)?;
    let tol_eig = checked_tol(c.tol_eig, DEFAULT_ROOT_TOL, "tol-eig")?;
    let a = matrix_from_json(&read_json(&args.input)?)?;
    let z = sigma(&a);
    let eig = eigenvalues(&a, tol_eig)?;
    let rho = spectral_radius_tol(&a, tol_eig)?;
    let inside = in_omega(&a, margin)?;
    let nonderog = is_nonderogatory(&a, StructureTols::default())?;
    let json = json!({
        "n": a.n(),
        "sigma": sympoint_to_json(&z),
        "eigenvalues": complex_list_to_json(&eig),
        "rho": rho,
        "in_omega": inside,
        "nonderogatory": nonderog,
    });
    let text = format!(
        "n = {}\nsigma = {}\neigenvalues = {}\nrho = {rho}\nin_omega = {inside}\nnonderogatory = {nonderog}",
        a.n(),
        fmt_list(z.coords()),
        fmt_list(&eig),
    );
    Ok(Output::pass(render(c.format, json, text)))
}

fn cmd_member(args: InputArgs) -> Result<Output> {
    let c = &args.common;
    let margin = check_margin(c.margin)?;
    let v = read_json(&args.input)?;
    let (kind, inside) = match v.get("z") {
        Some(z) => {
            let p = SymPoint::new(complex_list_from_json(z)?)?;
            ("G_n", in_gn(&p, margin)?)
        }
        None => ("Omega_n", in_omega(&matrix_from_json(&v)?, margin)?),
    };
    let json = json!({"set": kind, "member": inside, "margin": margin});
    let text = format!("member of {kind}: {inside}");
    Ok(Output::pass(render(c.format, json, text)))
}

fn cmd_apply(args: ApplyArgs) -> Result<Output> {
    let c = &args.common;
    let a = matrix_from_json(&read_json(&args.input)?)?;
    let f = discmap_from_json(&inline_or_file(&args.map)?)?;
    let (fa, method) = match args.method {
        Method::Exact => (apply_exact(&f, &a)?, CalculusMethod::Exact),
        Method::Series => (
            apply_series(&f, &a, DEFAULT_SERIES_TOL, DEFAULT_SERIES_MAX_TERMS)?,
            CalculusMethod::Series,
        ),
    };
    let residual = equivariance_residual(&f, &a, method)?;
    let z = sigma(&fa);
    let json = json!({
        "result": matrix_to_json(&fa),
        "sigma": sympoint_to_json(&z),
        "equivariance_residual": residual,
    });
    let text = format!(
        "f(A) =\n{}\nsigma(f(A)) = {}\nequivariance residual = {residual:.3e}",
        fmt_matrix(&fa),
        fmt_list(z.coords()),
    );
    Ok(Output::pass(render(c.format, json, text)))
}

fn cmd_fiber(args: FiberArgs) -> Result<Output> {
    let c = &args.common;
    let tol_rank = checked_tol(c.tol_rank, DEFAULT_RANK_TOL, "tol-rank")?;
    let v = read_json(&args.input)?;
    let mut rng = rng_from_seed(args.seed);
    let (a, z) = if v.is_array() {
        let spec = jordan_spec_from_json(&v)?;
        let basis = random_basis(spec.n(), DEFAULT_COND_BOUND, &mut rng);
        let r = JordanRealization::new(spec, basis)?;
        let a = r.realize();
        let z = pi_n(&r.spec().eigenvalues())?;
        (a, z)
    } else if let Some(z) = v.get("z") {
        let p = SymPoint::new(complex_list_from_json(z)?)?;
        let basis = random_basis(p.n(), DEFAULT_COND_BOUND, &mut rng);
        (lemma6_sample_from_point(&p, &basis)?, p)
    } else if let Some(zs) = v.get("zetas") {
        let p = pi_n(&complex_list_from_json(zs)?)?;
        let basis = random_basis(p.n(), DEFAULT_COND_BOUND, &mut rng);
        (lemma6_sample_from_point(&p, &basis)?, p)
    } else {
        return Err(VerifyError::input(
            "fiber input must be {\"z\": [...]}, {\"zetas\": [...]} or a Jordan specification list",
        ));
    };
    let residual = sigma(&a).max_abs_diff(&z);
    let dim = fiber_tangent_dim_tol(&a, tol_rank);
    let json = json!({
        "matrix": matrix_to_json(&a),
        "sigma": sympoint_to_json(&z),
        "sigma_residual": residual,
        "tangent_dim": dim,
    });
    let text = format!(
        "A =\n{}\nsigma residual = {residual:.3e}\nfiber tangent dimension = {dim}",
        fmt_matrix(&a)
    );
    Ok(Output::pass(render(c.format, json, text)))
}

fn effective_seed(flag: Option<u64>) -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| {
            VerifyError::Config(format!("{SEED_ENV}={s:?} is not a 64-bit unsigned integer"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(flag),
        Err(std::env::VarError::NotUnicode(_)) => Err(VerifyError::Config(format!(
            "{SEED_ENV} is not valid unicode"
        ))),
    }
}

fn build_config(suite: SuiteName, args: &VerifyArgs) -> Result<SuiteConfig> {
    let mut cfg = SuiteConfig::new(suite);
    if let Some(n) = &args.n {
        let (lo, hi) = parse_n_range(n)?;
        cfg = cfg.with_n(lo, hi);
    }
    if let Some(k) = args.cases {
        cfg = cfg.with_cases(k);
    }
    if let Some(s) = effective_seed(args.seed)? {
        cfg = cfg.with_seed(s);
    }
    if let Some(r) = args.radius {
        cfg = cfg.with_radius(r);
    }
    if let Some(t) = args.common.tol_eig {
        cfg = cfg.with_tolerance(TOL_EIG, t);
    }
    if let Some(t) = args.common.tol_rank {
        cfg = cfg.with_tolerance(TOL_RANK, t);
    }
    cfg.margin = args.common.margin;
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_verify(args: VerifyArgs) -> Result<Output> {
    let suites: Vec<SuiteName> = if args.suite == "all" {
        SuiteName::ALL.to_vec()
    } else {
        vec![args.suite.parse()?]
    };
    let configs = suites
        .iter()
        .map(|&s| build_config(s, &args))
        .collect::<Result<Vec<_>>>()?;
    let reports = configs
        .iter()
        .map(run_suite)
        .collect::<Result<Vec<Report>>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let text = match args.common.format {
        Format::Json if reports.len() == 1 => {
            serde_json::to_string_pretty(&reports[0].to_json()).expect("serializable")
        }
        Format::Json => serde_json::to_string_pretty(&json!({
            "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
            "pass": pass,
        }))
        .expect("serializable"),
        Format::Text => {
            let mut s: Vec<String> = reports.iter().map(Report::to_text).collect();
            if reports.len() > 1 {
                let failed: Vec<&str> = reports
                    .iter()
                    .filter(|r| !r.pass)
                    .map(|r| r.suite.as_str())
                    .collect();
                s.push(if failed.is_empty() {
                    format!("all {} suites passed", reports.len())
                } else {
                    format!("failed suites: {}", failed.join(", "))
                });
            }
            s.join("\n")
        }
    };
    Ok(Output {
        text,
        code: if pass { EXIT_PASS } else { EXIT_FAIL },
    })
}
