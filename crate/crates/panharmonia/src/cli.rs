//! Command line front end: argument grammars, run manifests, and report
//! emission for every module in the crate.
//!
//! Each invocation resolves its arguments (defaults included) into a
//! [`RunManifest`], executes the corresponding library operation, prints a
//! human-readable summary to stdout, and optionally writes a JSON report of
//! the form `{"manifest": ..., "payload": ...}` to the `--report` path. The
//! `wos` subcommand prints machine JSON to stdout, as its contract
//! promises. Exit codes: 0 on success or when every check passed, 1 when a
//! check failed or a computation broke down, 2 on usage and specification
//! errors.
//!
//! Manifests make reports reproducible: [`manifest_to_argv`] rebuilds an
//! argument vector that reruns the same operation with the same resolved
//! parameters, and deterministic runs then produce identical payloads.
//! Scalars print through Rust's shortest round-trip formatting, so every
//! digit shown is exact and feeding it back reproduces the same value.
//!
//! The environment variable `PANHARMONIA_THREADS` caps the worker pool.
//! Estimates do not depend on the worker count, only throughput does.

use crate::detector::{classify, ClassifyConfig};
use crate::error::{Error, Result};
use crate::fields::parse_field;
use crate::geometry::{parse_domain, parse_point, Domain, Point, RngStream};
use crate::means::{ball_mean, domain_mean, iterated_mean, sphere_mean, QuadratureConfig};
use crate::specfun::{bessel_i, coeff, CoeffKind, HalfOrder};
use crate::verify::{
    kugel_discrepancy, kugel_fundamental_check, riesz_harmonic_part, suite_all, suite_csv,
    verify_asymptotic, verify_identity, verify_max_principle, AsymptoticKind, CheckReport,
    IdentityKind,
};
use crate::wos::{wos_solve, WosConfig, WosVariant};
use chrono::{SecondsFormat, Utc};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Provenance header embedded in every JSON report.
///
/// `parameters` holds the resolved long-flag values, defaults included, so
/// a report fully documents the run that produced it. Output paths such as
/// `--report` and `--csv` are not parameters; they do not affect payloads.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub tool_version: String,
    pub timestamp: String,
}

/// Flags that take no value; a "true" entry regenerates a bare flag.
const BOOL_FLAGS: [&str; 4] = ["scaled", "max-principle", "riesz", "fundamental"];

/// Keys whose value is a semicolon-joined list of a repeatable flag.
const LIST_FLAGS: [&str; 1] = ["probe"];

fn subcommand_takes_seed(name: &str) -> bool {
    !matches!(name, "bessel" | "coeff")
}

/// Rebuilds an argument vector that reproduces the manifest's run.
///
/// Report paths are not recorded in manifests; append `--report` or
/// `--csv` to the result to capture output files again.
pub fn manifest_to_argv(manifest: &RunManifest) -> Vec<String> {
    let mut argv = vec!["panharmonia".to_string(), manifest.subcommand.clone()];
    for (key, value) in &manifest.parameters {
        if BOOL_FLAGS.contains(&key.as_str()) {
            if value == "true" {
                argv.push(format!("--{key}"));
            }
        } else if LIST_FLAGS.contains(&key.as_str()) {
            for item in value.split(';').filter(|s| !s.is_empty()) {
                argv.push(format!("--{key}"));
                argv.push(item.to_string());
            }
        } else {
            argv.push(format!("--{key}"));
            argv.push(value.clone());
        }
    }
    if subcommand_takes_seed(&manifest.subcommand) {
        argv.push("--seed".into());
        argv.push(manifest.seed.to_string());
    }
    argv
}

#[derive(Parser)]
#[command(
    name = "panharmonia",
    version,
    about = "Mean value calculus for the modified Helmholtz equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Modified Bessel function of the first kind at half-integer order.
    Bessel(BesselArgs),
    /// Mean-value coefficient: sphere, ball, or their ratio.
    Coeff(CoeffArgs),
    /// Sphere, ball, iterated, or domain mean of a catalog field.
    Mean(MeanArgs),
    /// Identity and theorem checks with machine-readable reports.
    Verify(VerifyArgs),
    /// Classify a field as panharmonic, harmonic, or neither.
    Detect(DetectArgs),
    /// Solve a Dirichlet problem by Bessel-weighted walk on spheres.
    Wos(WosArgs),
    /// Ball-characterization experiments on volume means.
    Kugel(KugelArgs),
}

#[derive(Args)]
struct BesselArgs {
    /// Order, a nonnegative integer or half integer such as 0.5 or 2.
    #[arg(long)]
    nu: f64,
    /// Argument z >= 0.
    #[arg(long)]
    z: f64,
    /// Evaluate the scaled function e^{-z} I_nu(z) instead.
    #[arg(long)]
    scaled: bool,
    /// Write a JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffArgs {
    /// Coefficient kind: sphere, ball, or ratio.
    #[arg(long)]
    kind: String,
    /// Space dimension m >= 2.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Argument t = mu * r >= 0.
    #[arg(long)]
    t: f64,
    /// Write a JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct MeanArgs {
    /// Mean kind: sphere, ball, iterated, or domain.
    #[arg(long)]
    kind: String,
    /// Field identifier, e.g. u_radial, efund-@3,0,0, const:1.
    #[arg(long)]
    field: String,
    /// Space dimension m >= 2.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Parameter mu used by mu-dependent catalog fields.
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Center coordinates, comma separated (sphere, ball, iterated).
    #[arg(long)]
    center: Option<String>,
    /// Sphere or ball radius; the outer radius for iterated.
    #[arg(long)]
    radius: Option<f64>,
    /// Inner radius for the iterated mean.
    #[arg(long)]
    radius2: Option<f64>,
    /// Domain specification for the domain mean, e.g. ball:1 or
    /// shell:0.5,1.
    #[arg(long)]
    domain: Option<String>,
    /// Sample count where Monte Carlo is used.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Monte Carlo master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write a JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run the whole check registry; the only accepted value is "all".
    #[arg(long)]
    suite: Option<String>,
    /// Check one identity: sphere, ball, coupling, iterated, subharmonic,
    /// flux, or mean_ratio.
    #[arg(long)]
    identity: Option<String>,
    /// Check one r -> 0 limit: sphere or volume.
    #[arg(long)]
    asymptotic: Option<String>,
    /// Check the weak maximum principle on a lattice.
    #[arg(long)]
    max_principle: bool,
    /// Check the Riesz decomposition against the harmonic majorant.
    #[arg(long)]
    riesz: bool,
    /// Field identifier.
    #[arg(long, default_value = "u_radial")]
    field: String,
    /// Domain specification.
    #[arg(long, default_value = "ball:1")]
    domain: String,
    /// Space dimension m >= 2.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Panharmonicity parameter mu.
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Probe point for the asymptotic checks, comma separated.
    #[arg(long)]
    point: Option<String>,
    /// Sampled configurations per identity check.
    #[arg(long, default_value_t = 12)]
    trials: usize,
    /// Lattice resolution per axis for the maximum principle.
    #[arg(long, default_value_t = 17)]
    grid: usize,
    /// Interior probe for the Riesz check, comma separated; repeatable.
    #[arg(long)]
    probe: Vec<String>,
    /// RNG master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the checks as a JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the check summary as CSV to this path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct DetectArgs {
    /// Field identifier to classify.
    #[arg(long)]
    field: String,
    /// Domain the field is probed on.
    #[arg(long, default_value = "ball:1")]
    domain: String,
    /// Space dimension m >= 2.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Parameter handed to mu-dependent catalog fields.
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Seed for probe-center sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the verdict as a JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct WosArgs {
    /// Domain specification, e.g. ball:1.
    #[arg(long)]
    domain: String,
    /// Panharmonicity parameter mu >= 0.
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Boundary data as a field identifier, e.g. const:1 or efund-@3,0,0.
    #[arg(long)]
    boundary: String,
    /// Evaluation point, comma separated.
    #[arg(long)]
    point: String,
    /// Number of independent walks.
    #[arg(long, default_value_t = 100_000)]
    walks: u64,
    /// Termination shell width as a fraction of the domain diameter.
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    /// Weight handling: weighted or killing.
    #[arg(long, default_value = "weighted")]
    variant: String,
    /// Jump radius as a fraction of the distance to the boundary.
    #[arg(long, default_value_t = 1.0)]
    jump_fraction: f64,
    /// Step cap per walk.
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
    /// Space dimension m >= 2.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Master seed; walk k draws from stream k.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write a JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct KugelArgs {
    /// Domain specification.
    #[arg(long)]
    domain: String,
    /// Space dimension m >= 2.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Panharmonicity parameter mu > 0.
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Run the fundamental-solution exterior check instead of the
    /// discrepancy measurement.
    #[arg(long)]
    fundamental: bool,
    /// Interior reference point for the fundamental check; defaults to the
    /// domain center.
    #[arg(long)]
    center: Option<String>,
    /// Exterior probe point, comma separated; repeatable.
    #[arg(long)]
    probe: Vec<String>,
    /// RNG master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write a JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Parses argv, runs the selected subcommand, and returns the process exit
/// code. Library and specification errors print a one-line diagnostic to
/// stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    init_threads();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn init_threads() {
    let Ok(text) = std::env::var("PANHARMONIA_THREADS") else {
        return;
    };
    match text.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
        _ => eprintln!("warning: ignoring PANHARMONIA_THREADS={text:?}; expected a positive integer"),
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Bessel(a) => cmd_bessel(a),
        Command::Coeff(a) => cmd_coeff(a),
        Command::Mean(a) => cmd_mean(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Detect(a) => cmd_detect(a),
        Command::Wos(a) => cmd_wos(a),
        Command::Kugel(a) => cmd_kugel(a),
    }
}

fn manifest(subcommand: &str, seed: u64, params: Vec<(&str, String)>) -> RunManifest {
    RunManifest {
        subcommand: subcommand.into(),
        parameters: params
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        seed,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
    }
}

fn write_report<P: Serialize>(
    path: &Option<PathBuf>,
    manifest: &RunManifest,
    payload: &P,
) -> Result<()> {
    let Some(path) = path else {
        return Ok(());
    };
    let doc = json!({ "manifest": manifest, "payload": payload });
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn checked_point(text: &str, dim: usize) -> Result<Point> {
    let x = parse_point(text)?;
    if x.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: x.dim(),
        });
    }
    Ok(x)
}

fn point_text(x: &Point) -> String {
    x.coords()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Prints one line per check and returns whether all of them passed.
/// Notes are shown for failures, and for every check when `verbose` is
/// set.
fn print_checks(reports: &[CheckReport], verbose: bool) -> bool {
    let mut all = true;
    for r in reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} {:<34} residual {:>12.5e}  threshold {:>9.1e}  cases {:>3}",
            r.check_id,
            r.max_relative_residual,
            r.threshold,
            r.cases.len()
        );
        if (verbose || !r.passed) && !r.notes.is_empty() {
            println!("     {}", r.notes);
        }
        all &= r.passed;
    }
    all
}

fn pass_exit(passed: bool) -> i32 {
    if passed {
        0
    } else {
        1
    }
}

fn cmd_bessel(a: &BesselArgs) -> Result<i32> {
    let order = HalfOrder::try_from_f64(a.nu)?;
    let value = bessel_i(order, a.z, a.scaled)?;
    println!("{value}");
    let m = manifest(
        "bessel",
        0,
        vec![
            ("nu", a.nu.to_string()),
            ("z", a.z.to_string()),
            ("scaled", a.scaled.to_string()),
        ],
    );
    write_report(
        &a.report,
        &m,
        &json!({ "nu": a.nu, "z": a.z, "scaled": a.scaled, "value": value }),
    )?;
    Ok(0)
}

fn cmd_coeff(a: &CoeffArgs) -> Result<i32> {
    let kind: CoeffKind = a.kind.parse()?;
    let value = coeff(kind, a.dim, a.t)?;
    println!("{value}");
    let m = manifest(
        "coeff",
        0,
        vec![
            ("kind", a.kind.clone()),
            ("dim", a.dim.to_string()),
            ("t", a.t.to_string()),
        ],
    );
    write_report(
        &a.report,
        &m,
        &json!({ "kind": a.kind, "dim": a.dim, "t": a.t, "value": value }),
    )?;
    Ok(0)
}

fn cmd_mean(a: &MeanArgs) -> Result<i32> {
    let f = parse_field(&a.field, a.dim, a.mu)?;
    let mut q = QuadratureConfig::default().with_seed(a.seed);
    q.mc_samples = a.samples;
    let mut params = vec![
        ("kind", a.kind.clone()),
        ("field", a.field.clone()),
        ("dim", a.dim.to_string()),
        ("mu", a.mu.to_string()),
        ("samples", a.samples.to_string()),
    ];
    let need_center = || -> Result<Point> {
        let text = a.center.as_deref().ok_or_else(|| {
            Error::InvalidArgument(format!("mean --kind {} requires --center", a.kind))
        })?;
        checked_point(text, a.dim)
    };
    let need_radius = |value: Option<f64>, flag: &str| -> Result<f64> {
        value.ok_or_else(|| {
            Error::InvalidArgument(format!("mean --kind {} requires {flag}", a.kind))
        })
    };
    let est = match a.kind.as_str() {
        "sphere" | "ball" => {
            let x = need_center()?;
            let r = need_radius(a.radius, "--radius")?;
            params.push(("center", point_text(&x)));
            params.push(("radius", r.to_string()));
            if a.kind == "sphere" {
                sphere_mean(&f, &x, r, &q)?
            } else {
                ball_mean(&f, &x, r, &q)?
            }
        }
        "iterated" => {
            let x = need_center()?;
            let r_outer = need_radius(a.radius, "--radius")?;
            let r_inner = need_radius(a.radius2, "--radius2")?;
            params.push(("center", point_text(&x)));
            params.push(("radius", r_outer.to_string()));
            params.push(("radius2", r_inner.to_string()));
            iterated_mean(&f, &x, r_outer, r_inner, &q)?
        }
        "domain" => {
            let spec = a.domain.as_deref().ok_or_else(|| {
                Error::InvalidArgument("mean --kind domain requires --domain".into())
            })?;
            let d = parse_domain(spec, a.dim)?;
            params.push(("domain", spec.to_string()));
            domain_mean(&f, &d, &q)?
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown mean kind '{other}'; known: sphere, ball, iterated, domain"
            )))
        }
    };
    println!("{:<10} {}", "kind", a.kind);
    println!("{:<10} {}", "field", f.label());
    println!("{:<10} {}", "value", est.value);
    println!("{:<10} {}", "std_error", est.std_error);
    println!("{:<10} {}", "samples", est.samples);
    println!("{:<10} {}", "method", est.method);
    let m = manifest("mean", a.seed, params);
    write_report(
        &a.report,
        &m,
        &json!({
            "kind": a.kind,
            "field": a.field,
            "value": est.value,
            "std_error": est.std_error,
            "samples": est.samples,
            "method": est.method.to_string(),
        }),
    )?;
    Ok(0)
}

fn default_probe_point(dim: usize) -> String {
    let mut coords = vec!["0".to_string(); dim];
    coords[0] = "0.3".into();
    coords.join(",")
}

fn default_riesz_probes(d: &Domain) -> Result<Vec<Point>> {
    let (center, radius) = d.as_ball().ok_or_else(|| {
        Error::Unsupported(
            "default Riesz probes are radial; pass --probe points for non-ball domains".into(),
        )
    })?;
    let mut e1 = vec![0.0; center.dim()];
    e1[0] = 1.0;
    Ok((0..10)
        .map(|i| center.translated(&e1, radius * (i as f64 + 1.0) / 11.0))
        .collect())
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let modes = [
        a.suite.is_some(),
        a.identity.is_some(),
        a.asymptotic.is_some(),
        a.max_principle,
        a.riesz,
    ];
    if modes.iter().filter(|&&on| on).count() != 1 {
        return Err(Error::InvalidArgument(
            "choose exactly one of --suite, --identity, --asymptotic, --max-principle, --riesz"
                .into(),
        ));
    }

    let (m, reports) = if let Some(suite) = &a.suite {
        if suite != "all" {
            return Err(Error::Parse(format!(
                "unknown suite '{suite}'; the only suite is 'all'"
            )));
        }
        let reports = suite_all(a.dim, a.mu, a.seed)?;
        let m = manifest(
            "verify",
            a.seed,
            vec![
                ("suite", "all".to_string()),
                ("dim", a.dim.to_string()),
                ("mu", a.mu.to_string()),
            ],
        );
        (m, reports)
    } else if let Some(kind_text) = &a.identity {
        let kind: IdentityKind = kind_text.parse()?;
        let f = parse_field(&a.field, a.dim, a.mu)?;
        let d = parse_domain(&a.domain, a.dim)?;
        let q = if kind == IdentityKind::Iterated {
            QuadratureConfig::coarse().with_seed(a.seed)
        } else {
            QuadratureConfig::default().with_seed(a.seed)
        };
        let mut rng = RngStream::new(a.seed, 0);
        let report = verify_identity(kind, &f, a.mu, &d, &q, a.trials, &mut rng)?;
        let m = manifest(
            "verify",
            a.seed,
            vec![
                ("identity", kind.as_str().to_string()),
                ("field", a.field.clone()),
                ("domain", a.domain.clone()),
                ("dim", a.dim.to_string()),
                ("mu", a.mu.to_string()),
                ("trials", a.trials.to_string()),
            ],
        );
        (m, vec![report])
    } else if let Some(kind_text) = &a.asymptotic {
        let kind: AsymptoticKind = kind_text.parse()?;
        let f = parse_field(&a.field, a.dim, a.mu)?;
        let point_spec = a
            .point
            .clone()
            .unwrap_or_else(|| default_probe_point(a.dim));
        let x = checked_point(&point_spec, a.dim)?;
        let report = verify_asymptotic(kind, &f, a.mu, &x)?;
        let m = manifest(
            "verify",
            a.seed,
            vec![
                ("asymptotic", kind.to_string()),
                ("field", a.field.clone()),
                ("dim", a.dim.to_string()),
                ("mu", a.mu.to_string()),
                ("point", point_spec),
            ],
        );
        (m, vec![report])
    } else if a.max_principle {
        let f = parse_field(&a.field, a.dim, a.mu)?;
        let d = parse_domain(&a.domain, a.dim)?;
        let report = verify_max_principle(&f, &d, a.grid)?;
        let m = manifest(
            "verify",
            a.seed,
            vec![
                ("max-principle", "true".to_string()),
                ("field", a.field.clone()),
                ("domain", a.domain.clone()),
                ("dim", a.dim.to_string()),
                ("mu", a.mu.to_string()),
                ("grid", a.grid.to_string()),
            ],
        );
        (m, vec![report])
    } else {
        let f = parse_field(&a.field, a.dim, a.mu)?;
        let d = parse_domain(&a.domain, a.dim)?;
        let probes: Vec<Point> = if a.probe.is_empty() {
            default_riesz_probes(&d)?
        } else {
            a.probe
                .iter()
                .map(|t| checked_point(t, a.dim))
                .collect::<Result<_>>()?
        };
        let report = riesz_harmonic_part(&f, a.mu, &d, &probes)?;
        let probe_list = probes.iter().map(point_text).collect::<Vec<_>>().join(";");
        let m = manifest(
            "verify",
            a.seed,
            vec![
                ("riesz", "true".to_string()),
                ("field", a.field.clone()),
                ("domain", a.domain.clone()),
                ("dim", a.dim.to_string()),
                ("mu", a.mu.to_string()),
                ("probe", probe_list),
            ],
        );
        (m, vec![report])
    };

    let verbose = reports.len() == 1;
    let passed = print_checks(&reports, verbose);
    if reports.len() > 1 {
        let n_pass = reports.iter().filter(|r| r.passed).count();
        println!("{n_pass}/{} checks passed", reports.len());
    }
    write_report(
        &a.report,
        &m,
        &json!({ "checks": reports, "passed": passed }),
    )?;
    if let Some(path) = &a.csv {
        std::fs::write(path, suite_csv(&reports))?;
    }
    Ok(pass_exit(passed))
}

fn cmd_detect(a: &DetectArgs) -> Result<i32> {
    let f = parse_field(&a.field, a.dim, a.mu)?;
    let d = parse_domain(&a.domain, a.dim)?;
    let config = ClassifyConfig {
        seed: a.seed,
        ..ClassifyConfig::default()
    };
    let verdict = classify(&f, &d, &config)?;
    let max_deviation = verdict
        .residual_profile
        .iter()
        .map(|&(_, dev)| dev)
        .fold(0.0, f64::max);
    println!("{:<22} {}", "class", verdict.class);
    match verdict.mu_hat {
        Some(mu_hat) => println!("{:<22} {}", "mu_hat", mu_hat),
        None => println!("{:<22} -", "mu_hat"),
    }
    println!("{:<22} {}", "confidence", verdict.confidence);
    println!(
        "{:<22} {} radii, max deviation {:.3e}",
        "profile",
        verdict.residual_profile.len(),
        max_deviation
    );
    let m = manifest(
        "detect",
        a.seed,
        vec![
            ("field", a.field.clone()),
            ("domain", a.domain.clone()),
            ("dim", a.dim.to_string()),
            ("mu", a.mu.to_string()),
        ],
    );
    write_report(&a.report, &m, &verdict)?;
    Ok(0)
}

fn cmd_wos(a: &WosArgs) -> Result<i32> {
    let d = parse_domain(&a.domain, a.dim)?;
    let g = parse_field(&a.boundary, a.dim, a.mu)?;
    let x = checked_point(&a.point, a.dim)?;
    let variant: WosVariant = a.variant.parse()?;
    let cfg = WosConfig {
        epsilon_shell: a.eps,
        max_steps: a.max_steps,
        walks: a.walks,
        variant,
        jump_fraction: a.jump_fraction,
        seed: a.seed,
    };
    let sol = wos_solve(&d, &g, a.mu, &x, &cfg)?;
    let payload = json!({
        "value": sol.estimate.value,
        "std_error": sol.estimate.std_error,
        "walks": sol.walks,
        "killed_fraction": sol.killed_fraction,
        "mean_steps": sol.mean_steps,
        "max_steps_fraction": sol.max_steps_fraction,
        "notes": sol.notes,
    });
    println!("{}", serde_json::to_string(&payload)?);
    let m = manifest(
        "wos",
        a.seed,
        vec![
            ("domain", a.domain.clone()),
            ("mu", a.mu.to_string()),
            ("boundary", a.boundary.clone()),
            ("point", a.point.clone()),
            ("walks", a.walks.to_string()),
            ("eps", a.eps.to_string()),
            ("variant", a.variant.clone()),
            ("jump-fraction", a.jump_fraction.to_string()),
            ("max-steps", a.max_steps.to_string()),
            ("dim", a.dim.to_string()),
        ],
    );
    write_report(&a.report, &m, &payload)?;
    Ok(0)
}

fn default_exterior_probes(d: &Domain) -> Vec<Point> {
    let m = d.dim();
    let c = d.center();
    let reach = 0.75 * d.diameter();
    let mut e1 = vec![0.0; m];
    e1[0] = 1.0;
    let mut e2_neg = vec![0.0; m];
    e2_neg[1] = -1.0;
    let diag = vec![1.0 / (m as f64).sqrt(); m];
    [e1, e2_neg, diag]
        .iter()
        .map(|dir| c.translated(dir, reach))
        .collect()
}

fn cmd_kugel(a: &KugelArgs) -> Result<i32> {
    let d = parse_domain(&a.domain, a.dim)?;
    let mut rng = RngStream::new(a.seed, 0);
    if a.fundamental {
        let x0 = match &a.center {
            Some(text) => checked_point(text, a.dim)?,
            None => d.center(),
        };
        let probes: Vec<Point> = if a.probe.is_empty() {
            default_exterior_probes(&d)
        } else {
            a.probe
                .iter()
                .map(|t| checked_point(t, a.dim))
                .collect::<Result<_>>()?
        };
        let report = kugel_fundamental_check(&d, a.mu, &x0, &probes, a.samples, &mut rng)?;
        let passed = print_checks(std::slice::from_ref(&report), true);
        let probe_list = probes.iter().map(point_text).collect::<Vec<_>>().join(";");
        let m = manifest(
            "kugel",
            a.seed,
            vec![
                ("domain", a.domain.clone()),
                ("dim", a.dim.to_string()),
                ("mu", a.mu.to_string()),
                ("samples", a.samples.to_string()),
                ("fundamental", "true".to_string()),
                ("center", point_text(&x0)),
                ("probe", probe_list),
            ],
        );
        write_report(
            &a.report,
            &m,
            &json!({ "checks": [report], "passed": passed }),
        )?;
        return Ok(pass_exit(passed));
    }
    let est = kugel_discrepancy(&d, a.mu, a.samples, &mut rng)?;
    let significance = est.value.abs() / est.std_error.max(f64::MIN_POSITIVE);
    println!("{:<16} {}", "delta", est.value);
    println!("{:<16} {}", "std_error", est.std_error);
    println!("{:<16} {:.2}", "significance", significance);
    println!("{:<16} {}", "matched_radius", d.matched_radius());
    println!("{:<16} {}", "samples", a.samples);
    let m = manifest(
        "kugel",
        a.seed,
        vec![
            ("domain", a.domain.clone()),
            ("dim", a.dim.to_string()),
            ("mu", a.mu.to_string()),
            ("samples", a.samples.to_string()),
            ("fundamental", "false".to_string()),
        ],
    );
    write_report(
        &a.report,
        &m,
        &json!({
            "delta": est.value,
            "std_error": est.std_error,
            "significance": significance,
            "matched_radius": d.matched_radius(),
            "samples": a.samples,
        }),
    )?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_argv_round_trip_covers_flags_lists_and_seeds() {
        let m = manifest(
            "kugel",
            7,
            vec![
                ("domain", "ball:1".to_string()),
                ("fundamental", "true".to_string()),
                ("probe", "2,0,0;0,-2.5,0".to_string()),
                ("samples", "1000".to_string()),
            ],
        );
        let argv = manifest_to_argv(&m);
        assert_eq!(
            argv,
            vec![
                "panharmonia",
                "kugel",
                "--domain",
                "ball:1",
                "--fundamental",
                "--probe",
                "2,0,0",
                "--probe",
                "0,-2.5,0",
                "--samples",
                "1000",
                "--seed",
                "7",
            ]
        );

        let quiet = manifest("bessel", 0, vec![("scaled", "false".to_string())]);
        assert_eq!(manifest_to_argv(&quiet), vec!["panharmonia", "bessel"]);
    }

    #[test]
    fn exit_codes_separate_usage_errors_from_results() {
        assert_eq!(
            run(["panharmonia", "coeff", "--kind", "sphere", "--dim", "3", "--t", "1.0"]),
            0
        );
        assert_eq!(
            run(["panharmonia", "coeff", "--kind", "cube", "--t", "1.0"]),
            2
        );
        assert_eq!(run(["panharmonia", "coeff", "--t", "1.0"]), 2);
        assert_eq!(
            run(["panharmonia", "mean", "--kind", "sphere", "--field", "u_radial"]),
            2
        );
        assert_eq!(
            run([
                "panharmonia",
                "wos",
                "--domain",
                "cone:1",
                "--boundary",
                "const:1",
                "--point",
                "0,0,0",
            ]),
            2
        );
    }

    #[test]
    fn verify_requires_exactly_one_mode() {
        assert_eq!(run(["panharmonia", "verify"]), 2);
        assert_eq!(
            run(["panharmonia", "verify", "--riesz", "--max-principle"]),
            2
        );
    }

    #[test]
    fn single_identity_check_passes_from_the_command_line() {
        assert_eq!(
            run([
                "panharmonia",
                "verify",
                "--identity",
                "sphere",
                "--field",
                "u_radial",
                "--domain",
                "ball:1",
                "--trials",
                "3",
            ]),
            0
        );
    }
}
