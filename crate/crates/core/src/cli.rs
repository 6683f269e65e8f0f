//! `steerscope` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or parse error (or a failed certificate),
//! 2 domain validation error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::error::Error;
use crate::hull::{lp_membership, steering_hull_membership, HullMembership, DEFAULT_DISCRETIZATION};
use crate::io::{parse_state, HullInput, InputError};
use crate::nonlocality::{equivalence_rows, max_chsh, EquivalenceCertificate};
use crate::povm::{boundary_sets, ellipse_point, povm_ellipse, EllipseGeometry, PovmElement};
use crate::quantum::werner_state;
use crate::steering::{max_steering, steering_lhs_with_beta, SteeringReport};
use crate::SCHEMA_VERSION;

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "STEERSCOPE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "steerscope", version, about = "Two-qubit EPR-steering analysis in the CHSH scenario")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum steering and CHSH values of a state, with optimal settings.
    Analyze(AnalyzeArgs),
    /// Werner-family sweep as CSV.
    ScanWerner(ScanArgs),
    /// Seeded ensemble check that the steering and CHSH maxima coincide.
    VerifyEquivalence(EquivalenceArgs),
    /// Closed-form and LP membership of a correlation vector in the local hull.
    HullCheck(HullArgs),
    /// Ellipse traced by two dichotomic POVMs.
    PovmEllipse(PovmArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// State JSON file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Grid points, at least 2.
    #[arg(long, default_value_t = 21)]
    pub n: usize,
    #[arg(long, default_value_t = 0.0)]
    pub eta_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub eta_max: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EquivalenceArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write per-state rows as CSV (next to --output, or after the JSON on stdout).
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct HullArgs {
    /// JSON file with "correlations" and "mu" or "beta".
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Comma-separated correlations, used when no input file is given.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub v: Option<Vec<f64>>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// LP discretization per extreme-point family.
    #[arg(long, default_value_t = DEFAULT_DISCRETIZATION)]
    pub k: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct PovmArgs {
    #[arg(long)]
    pub kb: f64,
    #[arg(long)]
    pub lam2b: f64,
    #[arg(long)]
    pub kbp: f64,
    #[arg(long)]
    pub lam2bp: f64,
    #[arg(long)]
    pub mu: f64,
    /// Boundary samples written to --output.
    #[arg(long, default_value_t = 360)]
    pub n: usize,
    /// Boundary CSV (xi, x, y).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("I/O error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            _ => 1,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Parse(msg) => CliError::Parse(msg),
            InputError::Invalid(err) => CliError::Domain(err),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_err(path))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// 17 significant digits, round-trip exact.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii output"))
}

#[derive(Debug, Serialize)]
pub struct AnalyzeOutput {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: SteeringReport,
    pub max_chsh: f64,
    pub chsh_violated: bool,
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<AnalyzeOutput, CliError> {
    let rho = parse_state(&read(&args.input)?)?;
    let report = max_steering(&rho);
    let chsh = max_chsh(&rho);
    Ok(AnalyzeOutput {
        schema_version: SCHEMA_VERSION,
        report,
        max_chsh: chsh,
        chsh_violated: chsh > crate::steering::LOCAL_BOUND,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub eta: f64,
    pub max_steering: f64,
    pub max_chsh: f64,
    pub steerable: bool,
}

pub fn cmd_scan_werner(args: &ScanArgs) -> Result<Vec<ScanRow>, CliError> {
    if args.n < 2 {
        return Err(Error::InvalidArgument(format!("scan needs n >= 2 grid points, got {}", args.n)).into());
    }
    let step = (args.eta_max - args.eta_min) / (args.n - 1) as f64;
    (0..args.n)
        .map(|i| {
            let eta = if i == args.n - 1 {
                args.eta_max
            } else {
                args.eta_min + step * i as f64
            };
            let rho = werner_state(eta)?;
            let report = max_steering(&rho);
            Ok(ScanRow {
                eta,
                max_steering: report.max_value,
                max_chsh: max_chsh(&rho),
                steerable: report.steerable,
            })
        })
        .collect()
}

pub fn scan_csv(rows: &[ScanRow]) -> Result<String, CliError> {
    csv_text(
        &["eta", "max_steering", "max_chsh", "steerable"],
        rows.iter().map(|r| {
            vec![
                fmt_float(r.eta),
                fmt_float(r.max_steering),
                fmt_float(r.max_chsh),
                r.steerable.to_string(),
            ]
        }),
    )
}

pub fn cmd_verify_equivalence(args: &EquivalenceArgs) -> Result<(EquivalenceCertificate, String), CliError> {
    let rows = equivalence_rows(args.seed, args.n)?;
    let cert = EquivalenceCertificate::from_rows(args.seed, &rows);
    let csv = csv_text(
        &["index", "max_steering", "max_chsh", "gap"],
        rows.iter().map(|r| {
            vec![
                r.index.to_string(),
                fmt_float(r.max_steering),
                fmt_float(r.max_chsh),
                fmt_float(r.gap),
            ]
        }),
    )?;
    Ok((cert, csv))
}

#[derive(Debug, Serialize)]
pub struct HullCheckOutput {
    pub schema_version: u32,
    pub correlations: [f64; 4],
    pub beta: f64,
    pub k: usize,
    /// General steering left side; the local bound is 2.
    pub steering_lhs: f64,
    pub closed_form: HullMembership,
    pub lp: HullMembership,
    pub agree: bool,
}

pub fn cmd_hull_check(args: &HullArgs) -> Result<HullCheckOutput, CliError> {
    let mut input = match (&args.input, &args.v) {
        (Some(path), _) => HullInput::parse(&read(path)?)?,
        (None, Some(v)) => HullInput {
            correlations: v
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Parse(format!("--v needs 4 values, got {}", v.len())))?,
            mu: None,
            beta: None,
        },
        (None, None) => return Err(CliError::Parse("hull-check needs --input or --v".into())),
    };
    if args.mu.is_some() || args.beta.is_some() {
        input.mu = args.mu;
        input.beta = args.beta;
    }
    let beta = input.beta()?;
    let cv = input.vector();
    let steering_lhs = steering_lhs_with_beta(&cv, beta)?;
    let closed = steering_hull_membership(&cv, beta)?;
    let mut lp = lp_membership(&cv, beta, args.k)?;
    if !args.verbose {
        lp.weights = None;
    }
    Ok(HullCheckOutput {
        schema_version: SCHEMA_VERSION,
        correlations: input.correlations,
        beta,
        k: args.k,
        steering_lhs,
        agree: closed.inside == lp.inside,
        closed_form: closed,
        lp,
    })
}

#[derive(Debug, Serialize)]
pub struct PovmOutput {
    pub schema_version: u32,
    #[serde(flatten)]
    pub geometry: EllipseGeometry,
    pub correlation_semi_axes: (f64, f64),
    /// Largest |conic residual| over the sampled boundary.
    pub max_residual: f64,
    pub n_samples: usize,
}

pub fn cmd_povm_ellipse(args: &PovmArgs) -> Result<(PovmOutput, String), CliError> {
    let eb = PovmElement::new(args.kb, args.lam2b)?;
    let ebp = PovmElement::new(args.kbp, args.lam2bp)?;
    let geometry = povm_ellipse(&eb, &ebp, args.mu)?;
    let sets = boundary_sets(&geometry, args.n)?;
    let points: Vec<(f64, f64, f64)> = sets
        .xi
        .iter()
        .map(|&xi| {
            let (x, y) = ellipse_point(&geometry, xi);
            (xi, x, y)
        })
        .collect();
    let max_residual = points
        .iter()
        .map(|&(_, x, y)| geometry.residual(x, y).abs())
        .fold(0.0, f64::max);
    let csv = csv_text(
        &["xi", "x", "y"],
        points.iter().map(|&(xi, x, y)| vec![fmt_float(xi), fmt_float(x), fmt_float(y)]),
    )?;
    Ok((
        PovmOutput {
            schema_version: SCHEMA_VERSION,
            correlation_semi_axes: geometry.correlation_semi_axes(),
            geometry,
            max_residual,
            n_samples: args.n,
        },
        csv,
    ))
}

/// Executes one parsed command, writing its outputs.
pub fn execute(config: &RunConfig) -> Result<(), CliError> {
    match &config.command {
        Command::Analyze(args) => write_or_print(args.output.as_deref(), &to_json(&cmd_analyze(args)?)),
        Command::ScanWerner(args) => write_or_print(args.output.as_deref(), &scan_csv(&cmd_scan_werner(args)?)?),
        Command::VerifyEquivalence(args) => {
            let (cert, csv) = cmd_verify_equivalence(args)?;
            write_or_print(args.output.as_deref(), &to_json(&cert))?;
            if args.verbose {
                let sibling = args.output.as_ref().map(|p| p.with_extension("csv"));
                write_or_print(sibling.as_deref(), &csv)?;
            }
            if cert.pass {
                Ok(())
            } else {
                Err(CliError::Failed(format!(
                    "equivalence certificate failed: max |gap| = {:e}",
                    cert.max_abs_gap
                )))
            }
        }
        Command::HullCheck(args) => write_or_print(args.output.as_deref(), &to_json(&cmd_hull_check(args)?)),
        Command::PovmEllipse(args) => {
            let (out, csv) = cmd_povm_ellipse(args)?;
            write_or_print(None, &to_json(&out))?;
            match &args.output {
                Some(path) => write_or_print(Some(path), &csv),
                None => Ok(()),
            }
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{THREADS_ENV}={raw:?} is not a thread count")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Io(e.to_string()))
}

/// Parses `args`, runs the command, reports errors on stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match thread_pool().and_then(|pool| pool.install(|| execute(&config))) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("steerscope: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 2.0 * std::f64::consts::SQRT_2, -1e-300, 0.0] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            assert!(!s.contains(','));
        }
    }

    #[test]
    fn scan_grid_endpoints() {
        let rows = cmd_scan_werner(&ScanArgs {
            n: 21,
            eta_min: 0.0,
            eta_max: 1.0,
            output: None,
        })
        .unwrap();
        assert_eq!(rows.len(), 21);
        assert_eq!(rows[20].eta, 1.0);
        assert!((rows[20].max_steering - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9);
        assert!(!rows[14].steerable && rows[15].steerable);
    }

    #[test]
    fn scan_rejects_single_point() {
        let err = cmd_scan_werner(&ScanArgs {
            n: 1,
            eta_min: 0.0,
            eta_max: 1.0,
            output: None,
        })
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn hull_check_degenerate_mu() {
        let args = HullArgs {
            input: None,
            v: Some(vec![0.0; 4]),
            mu: Some(1.0),
            beta: None,
            k: 64,
            output: None,
            verbose: false,
        };
        let err = cmd_hull_check(&args).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().starts_with("DegenerateMeasurementPair"));
    }

    #[test]
    fn povm_rejects_trivial_effect() {
        let args = PovmArgs {
            kb: 0.0,
            lam2b: 0.0,
            kbp: 1.0,
            lam2bp: 0.0,
            mu: 0.5,
            n: 32,
            output: None,
        };
        assert_eq!(cmd_povm_ellipse(&args).unwrap_err().exit_code(), 2);
    }
}
