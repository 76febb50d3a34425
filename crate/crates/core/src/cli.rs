//! Command-line front end.
//!
//! Exit codes: 0 when everything checked passes, 1 on a verification
//! failure, 2 on usage or domain errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::catalog::{Family, FamilyParams, KernelKind};
use crate::closed_form::{ConstantTable, TheoremId};
use crate::error::{Error, Result};
use crate::report::{write_csv, write_json};
use crate::scalar::{fmt17, parse_rational, Precision, Rational};
use crate::series::{PowerSeries, DEFAULT_ORDER};
use crate::verify::{
    run_sweep, summarize, verify_point, Grid, PointReport, TheoremSweep, VerifyOptions,
    DEFAULT_LADDER_DEPTH, DEFAULT_SWEEP_TOL,
};
use crate::zeros::{kernel_zero_with_order, primary_radius, DEFAULT_TOL};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "radii",
    version,
    about = "Euler-Rayleigh bounds, zeros and geometric radii of normalized Bessel, Struve and Lommel functions",
    after_help = "Arithmetic for power sums and closed forms is chosen by RADII_PRECISION=rational|float (default rational)."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a family's series at a real point.
    Eval(EvalArgs),
    /// Smallest positive zero of a kernel series.
    Zero(ZeroArgs),
    /// Radius of convexity or starlikeness of a family.
    Radius(RadiusArgs),
    /// Ladder, displayed bounds and certified zero for one theorem at one point.
    Bounds(BoundsArgs),
    /// Verify theorems over parameter grids.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ValueFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// ν (Bessel and Struve families).
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// α (struve_combo only).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// μ (Lommel families).
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
}

impl ParamArgs {
    fn values(&self) -> Result<(Rational, Rational, Rational)> {
        let parse = |s: &Option<String>| match s {
            Some(s) => parse_rational(s),
            None => Ok(Rational::zero()),
        };
        Ok((parse(&self.nu)?, parse(&self.alpha)?, parse(&self.mu)?))
    }

    fn family_params(&self, family: Family) -> Result<FamilyParams> {
        let (nu, alpha, mu) = self.values()?;
        FamilyParams::new(family, nu, alpha, mu)
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    family: Family,
    #[command(flatten)]
    params: ParamArgs,
    /// Evaluation point.
    #[arg(long, allow_hyphen_values = true)]
    z: f64,
    /// function, derivative or convexity.
    #[arg(long, default_value = "function")]
    kernel: KernelKind,
    /// Number of stored series coefficients.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    terms: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: ValueFormat,
}

#[derive(Debug, Args)]
struct ZeroArgs {
    #[arg(long)]
    family: Family,
    #[command(flatten)]
    params: ParamArgs,
    /// function, derivative or convexity (default: the family's radius kernel).
    #[arg(long)]
    kernel: Option<KernelKind>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    terms: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: ValueFormat,
}

#[derive(Debug, Args)]
struct RadiusArgs {
    #[arg(long)]
    family: Family,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: ValueFormat,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Ladder depth K.
    #[arg(long = "order", default_value_t = DEFAULT_LADDER_DEPTH)]
    depth: usize,
    /// Zero tolerance; displayed bounds must clear the zero by 10 tol.
    #[arg(long, default_value_t = DEFAULT_SWEEP_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the circle scans of the geometric functionals.
    #[arg(long)]
    no_geometry: bool,
    /// Angles per circle scan.
    #[arg(long, default_value_t = crate::geometry::DEFAULT_ANGLES)]
    angles: usize,
    /// Replace one stored constant: NAME:INDEX:VALUE.
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    theorem: TheoremId,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Theorems to verify (repeatable; default all).
    #[arg(long)]
    theorem: Vec<TheoremId>,
    /// Verify the theorems about this family.
    #[arg(long)]
    family: Option<Family>,
    /// Grid a:b:step for ν (or μ); exact rationals.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Grid a:b:step for α (T1).
    #[arg(long, allow_hyphen_values = true)]
    alpha_grid: Option<String>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    report: ReportArgs,
}

impl ReportArgs {
    fn options(&self) -> Result<VerifyOptions> {
        let mut constants = ConstantTable::default();
        if let Some(spec) = &self.inject_fault {
            let parts: Vec<&str> = spec.split(':').collect();
            let [name, index, value] = parts.as_slice() else {
                return Err(Error::Usage(format!(
                    "--inject-fault expects NAME:INDEX:VALUE, got `{spec}`"
                )));
            };
            let index = index
                .parse()
                .map_err(|_| Error::Usage(format!("bad index `{index}`")))?;
            let value = value
                .parse()
                .map_err(|_| Error::Usage(format!("bad value `{value}`")))?;
            constants = constants.perturbed(name, index, value)?;
        }
        if self.depth == 0 {
            return Err(Error::Usage("--order must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Usage(format!(
                "--tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(VerifyOptions {
            depth: self.depth,
            tol: self.tol,
            precision: Precision::from_env()?,
            geometry: !self.no_geometry,
            n_angles: self.angles,
            constants,
            ..VerifyOptions::default()
        })
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Eval(a) => eval(a),
        Command::Zero(a) => zero(a),
        Command::Radius(a) => radius(a),
        Command::Bounds(a) => bounds(a),
        Command::Verify(a) => verify(a),
    }
}

fn print_json(value: serde_json::Value) -> Result<i32> {
    println!(
        "{}",
        serde_json::to_string_pretty(&value).map_err(|e| Error::Io(e.to_string()))?
    );
    Ok(EXIT_PASS)
}

fn eval(a: EvalArgs) -> Result<i32> {
    let p = a.params.family_params(a.family)?;
    let s: PowerSeries<f64> = p.kernel(a.kernel, a.terms)?;
    let e = s.eval(a.z)?;
    match a.format {
        ValueFormat::Text => {
            println!(
                "{} at z = {}: {} ± {} ({} terms)",
                p.describe(),
                a.z,
                fmt17(e.value),
                fmt17(e.error_bound()),
                e.terms_used
            );
            Ok(EXIT_PASS)
        }
        ValueFormat::Json => print_json(serde_json::json!({
            "family": p.family().name(),
            "params": p.describe(),
            "kernel": a.kernel.to_string(),
            "z": a.z,
            "value": e.value,
            "error_bound": e.error_bound(),
            "terms_used": e.terms_used,
        })),
    }
}

fn print_radius(r: &crate::zeros::RadiusResult, format: ValueFormat) -> Result<i32> {
    match format {
        ValueFormat::Text => {
            println!(
                "{}: {} in [{}, {}]",
                r.kernel,
                fmt17(r.value),
                fmt17(r.bracket.0),
                fmt17(r.bracket.1)
            );
            Ok(EXIT_PASS)
        }
        ValueFormat::Json => {
            print_json(serde_json::to_value(r).map_err(|e| Error::Io(e.to_string()))?)
        }
    }
}

fn zero(a: ZeroArgs) -> Result<i32> {
    let p = a.params.family_params(a.family)?;
    let kind = a.kernel.unwrap_or_else(|| p.primary_kernel_kind());
    let r = kernel_zero_with_order(&p, kind, a.tol, a.terms)?;
    print_radius(&r, a.format)
}

fn radius(a: RadiusArgs) -> Result<i32> {
    let p = a.params.family_params(a.family)?;
    let r = primary_radius(&p, a.tol)?;
    print_radius(&r, a.format)
}

fn bounds(a: BoundsArgs) -> Result<i32> {
    let opts = a.report.options()?;
    let (nu, alpha, mu) = a.params.values()?;
    let value = if a.theorem.family().uses_mu() { mu } else { nu };
    // Surface hypothesis violations as errors rather than skipped rows.
    a.theorem.params(value.clone(), alpha.clone())?;
    let report = verify_point(a.theorem, &value, &alpha, &opts);
    emit(&[report], &a.report, &opts)
}

fn sweeps_for(a: &VerifyArgs) -> Result<Vec<TheoremSweep>> {
    let mut theorems = a.theorem.clone();
    if let Some(f) = a.family {
        theorems.extend(TheoremId::ALL.into_iter().filter(|t| t.family() == f));
    }
    if theorems.is_empty() {
        theorems = TheoremId::ALL.to_vec();
    }
    theorems.sort();
    theorems.dedup();

    let (nu, alpha, mu) = a.params.values()?;
    let explicit_alpha = a.params.alpha.is_some();
    let alphas = match &a.alpha_grid {
        Some(g) => Some(Grid::parse(g)?.points()),
        None => explicit_alpha.then(|| vec![alpha]),
    };
    let grid = a.grid.as_deref().map(Grid::parse).transpose()?;

    Ok(theorems
        .into_iter()
        .map(|t| {
            let single = if t.family().uses_mu() {
                a.params.mu.as_ref().map(|_| mu.clone())
            } else {
                a.params.nu.as_ref().map(|_| nu.clone())
            };
            let coarse = TheoremSweep::coarse(t);
            let values = match (&grid, single) {
                (Some(g), _) => g.points(),
                (None, Some(v)) => vec![v],
                (None, None) => coarse.values.clone(),
            };
            let alphas = alphas.clone().unwrap_or(coarse.alphas);
            TheoremSweep::new(t, values, alphas)
        })
        .collect())
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let opts = a.report.options()?;
    let sweeps = sweeps_for(&a)?;
    let reports = run_sweep(&sweeps, &opts);
    emit(&reports, &a.report, &opts)
}

fn emit(reports: &[PointReport], args: &ReportArgs, opts: &VerifyOptions) -> Result<i32> {
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let sink = BufWriter::new(sink);
    match args.format {
        ReportFormat::Csv => write_csv(sink, reports)?,
        ReportFormat::Json => write_json(sink, reports, opts)?,
    }

    let summary = summarize(reports);
    if summary.rows == 0 {
        eprintln!("warning: 0 rows (empty grid)");
        return Ok(EXIT_PASS);
    }
    for r in reports {
        if let crate::verify::Outcome::Skipped { code, reason } = &r.outcome {
            eprintln!("skipped {}: {code}: {reason}", r.label());
        }
        for c in r.failures() {
            eprintln!("FAIL {}: {}: {}", r.label(), c.name, c.detail);
        }
    }
    eprintln!(
        "{} rows: {} passed, {} failed, {} skipped",
        summary.rows, summary.passed, summary.failed, summary.skipped
    );
    Ok(if summary.failed > 0 {
        EXIT_FAIL
    } else {
        EXIT_PASS
    })
}
