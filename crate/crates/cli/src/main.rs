//! Command-line front end for the two-dipole asymmetry library: figure
//! presets, single-point evaluation, and the self-verification suite.

mod eval;
mod output;
mod presets;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mdi_asymmetry::scan::{run_scan, run_scan_with_workers, EvalPath, GridSpec, ScanResult};
use mdi_asymmetry::verify::run_all;
use mdi_asymmetry::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "mdi-asym",
    version,
    about = "Two-qubit dipolar dynamics: asymmetry and entanglement sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a predefined parameter sweep as CSV
    Figure(FigureArgs),
    /// Evaluate one measure at a single parameter point, printed as JSON
    Eval(EvalArgs),
    /// Run the self-verification property suite
    Verify(VerifyArgs),
}

#[derive(Args)]
pub(crate) struct FigureArgs {
    /// Preset to render
    #[arg(value_enum)]
    pub id: FigureId,
    /// Output CSV path (default <id>.csv; multi-file presets add suffixes)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Node count used for both axes
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Second polar angle, where the preset holds it fixed [default: pi/2]
    #[arg(long, allow_negative_numbers = true)]
    pub theta_b: Option<f64>,
    /// Fixed evolution time, where the preset needs one
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Fixed Bloch length of the second qubit, where the preset needs one
    #[arg(long, allow_negative_numbers = true)]
    pub r_b: Option<f64>,
    /// Bloch family for presets that cover both
    #[arg(long, value_enum)]
    pub axis: Option<AxisArg>,
    /// Evaluation pipeline [default: both; fig3 defaults to oracle]
    #[arg(long, value_enum)]
    pub path: Option<PathArg>,
    /// Worker threads for the scan engine (default: machine parallelism)
    #[arg(long)]
    pub workers: Option<usize>,
    /// Interpret --theta-b and --t as degrees
    #[arg(long)]
    pub deg: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum FigureId {
    #[value(name = "fig1")]
    Fig1,
    #[value(name = "fig2a")]
    Fig2a,
    #[value(name = "fig2b")]
    Fig2b,
    #[value(name = "fig3")]
    Fig3,
    #[value(name = "fig4")]
    Fig4,
    #[value(name = "fig5")]
    Fig5,
    #[value(name = "fig6")]
    Fig6,
    #[value(name = "fig7")]
    Fig7,
}

impl FigureId {
    pub(crate) fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum AxisArg {
    X,
    Z,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum PathArg {
    Closed,
    Oracle,
    Both,
}

impl PathArg {
    pub(crate) fn to_core(self) -> EvalPath {
        match self {
            PathArg::Closed => EvalPath::ClosedForm,
            PathArg::Oracle => EvalPath::Oracle,
            PathArg::Both => EvalPath::Both,
        }
    }
}

#[derive(Args)]
pub(crate) struct EvalArgs {
    /// Which measure to evaluate
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
    #[arg(long, allow_negative_numbers = true)]
    pub theta_a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta_b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r_a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r_b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Interpret angle and time flags as degrees
    #[arg(long)]
    pub deg: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum MeasureArg {
    #[value(name = "global-pure")]
    GlobalPure,
    #[value(name = "global-rho1")]
    GlobalRho1,
    #[value(name = "global-rho3")]
    GlobalRho3,
    #[value(name = "local-pure")]
    LocalPure,
    #[value(name = "local-rho1")]
    LocalRho1,
    #[value(name = "local-rho3")]
    LocalRho3,
    #[value(name = "unitary-pure")]
    UnitaryPure,
    #[value(name = "concurrence-pure")]
    ConcurrencePure,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for the deterministic random streams
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sample count for the randomized properties
    #[arg(long, default_value_t = 500)]
    samples: usize,
}

/// Failures carry the exit code convention: 1 computation or verification,
/// 2 usage, 3 I/O.
pub(crate) enum CliError {
    Computation(String),
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Computation(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Computation(m) | CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

fn classify(err: &CoreError) -> bool {
    match err {
        CoreError::OutOfRange { .. } | CoreError::InvalidGrid(_) | CoreError::BadAxis(_) => true,
        CoreError::AtGridPoint { source, .. } => classify(source),
        _ => false,
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        if classify(&err) {
            CliError::Usage(err.to_string())
        } else {
            CliError::Computation(err.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Figure(args) => cmd_figure(&args),
        Command::Eval(args) => eval::cmd_eval(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run_with_workers(spec: &GridSpec, workers: Option<usize>) -> Result<ScanResult, CliError> {
    let result = match workers {
        Some(n) => run_scan_with_workers(spec, n)?,
        None => run_scan(spec)?,
    };
    Ok(result)
}

fn cmd_figure(args: &FigureArgs) -> Result<(), CliError> {
    let jobs = presets::build_jobs(args)?;
    for job in jobs {
        let result = run_with_workers(&job.spec, args.workers)?;
        let file = File::create(&job.out)?;
        let mut writer = BufWriter::new(file);
        output::write_csv(&mut writer, &result, &job.label)?;
        writer.flush()?;
        eprintln!("{}: {}", job.out.display(), output::landmark_line(&result));
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let mut reports = run_all(args.seed, args.samples);
    reports.push(output::csv_round_trip_report());
    let mut failed = 0usize;
    for report in &reports {
        let status = if report.passed { "PASS" } else { "FAIL" };
        println!(
            "{} {:<36} worst {:>10.3e}  tol {:>9.3e}  {}",
            status, report.name, report.worst, report.tolerance, report.detail
        );
        if !report.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all {} properties passed", reports.len());
        Ok(())
    } else {
        Err(CliError::Computation(format!(
            "{failed} of {} properties failed",
            reports.len()
        )))
    }
}
