//! Command-line front end for the spectral toolkit: eigenvalue tables and
//! sweeps, frustration and Cheeger reports, bound checks, and the full
//! validation suite, emitted as CSV, JSON, or SVG.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or configuration error,
//! 3 numeric failure.

mod config;
mod emit;
mod run;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use magsteklov::radial::Sign;
use magsteklov::spectra::Model;
use magsteklov::SpectralError;

use run::Outcome;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, grammar, or config file; exit 2.
    Config(String),
    /// A computation refused or failed; exit 3.
    Compute(SpectralError),
    /// The artifact could not be written; exit 3.
    Io(std::path::PathBuf, std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Io(..) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "cannot write {}: {e}", path.display()),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        CliError::Compute(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Disk2,
    Ball4,
    Circle,
    Sphere3,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Disk2 => Model::Disk2,
            ModelArg::Ball4 => Model::Ball4,
            ModelArg::Circle => Model::Circle,
            ModelArg::Sphere3 => Model::Sphere3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// First-eigenvalue upper bound on the disk
    Upper,
    /// Curvature-based lower bound specialised to the flat disk
    Reilly,
    /// Boundary maximum principle of one radial mode
    MaxPrinciple,
    /// Interior-vs-boundary L2 bound of one radial mode
    L2,
    /// Boundary spectrum periodicity under integer field shifts
    Gauge,
    /// Strict growth of the first eigenvalue along a field grid
    Monotonicity,
    /// Large-field square-root law of the first eigenvalue
    Asymptotic,
    /// Interior-vs-boundary eigenvalue gap survey
    Comparison,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Upper => "upper",
            CheckKind::Reilly => "reilly",
            CheckKind::MaxPrinciple => "max-principle",
            CheckKind::L2 => "l2",
            CheckKind::Gauge => "gauge",
            CheckKind::Monotonicity => "monotonicity",
            CheckKind::Asymptotic => "asymptotic",
            CheckKind::Comparison => "comparison",
        }
    }
}

pub fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(format!("expected +, -, plus, or minus, got `{other}`")),
    }
}

#[derive(Parser)]
#[command(
    name = "magsteklov",
    version,
    about = "Magnetic Steklov and boundary magnetic-Laplacian spectra on the 2- and 4-ball"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Eigenvalue tables over a field-strength grid (csv, json, or svg)
    Spectrum(SpectrumArgs),
    /// Magnetic frustration of a rotationally symmetric potential
    Frustration(FrustrationArgs),
    /// Cheeger quotients of centered disks and annuli, with the
    /// first-eigenvalue diagnostic
    Cheeger(CheegerArgs),
    /// One bound or invariance check with a JSON report
    Bounds(BoundsArgs),
    /// Run the validation suite and emit a machine-readable report
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    /// Model: disk2, ball4, circle, or sphere3
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Field strength: a value `2`, a range `0:0.1:5`, or a list `0.5,1,2`
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Largest Fourier index (disk2, circle) or total bidegree (ball4,
    /// sphere3) [default: 8]
    #[arg(long)]
    k_max: Option<u32>,
    /// Output format [default: csv]
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Write the artifact here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Optional config file of `key = value` lines (keys match the long flag names); flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct FrustrationArgs {
    /// Angular profile g(r): `c`, `r^p`, or `c*r^p`
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Outer radius of the domain [default: 1]
    #[arg(long)]
    r0: Option<f64>,
    /// Inner radius; a positive value selects an annulus [default: 0]
    #[arg(long)]
    r_inner: Option<f64>,
    /// Remove the origin, enabling the integer gauge scan
    #[arg(long)]
    punctured: bool,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Optional config file of `key = value` lines (keys match the long flag names); flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct CheegerArgs {
    /// Field strength (single value)
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Test-domain radii: value, range, or list in [0, 1)
    /// [default: 0:0.1:0.9]
    #[arg(long)]
    s: Option<String>,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Optional config file of `key = value` lines (keys match the long flag names); flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Which check to run
    #[arg(long, value_enum)]
    check: Option<CheckKind>,
    /// Field strength; a grid for monotonicity, asymptotic, and comparison,
    /// a single value otherwise
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Fourier index for max-principle and l2 [default: 1]
    #[arg(long)]
    k: Option<u32>,
    /// Mode orientation for max-principle and l2: + or - [default: +]
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
    sign: Option<Sign>,
    /// Truncation index for gauge [default: 8]
    #[arg(long)]
    k_max: Option<u32>,
    /// Number of ranked eigenvalue pairs for comparison [default: 20]
    #[arg(long)]
    n: Option<usize>,
    /// Deviation safety factor for asymptotic [default: 3]
    #[arg(long)]
    safety: Option<f64>,
    /// Interior model for comparison: disk2 or ball4 [default: disk2]
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Optional config file of `key = value` lines (keys match the long flag names); flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restricted grids (t <= 10, k <= 8) for fast feedback
    #[arg(long)]
    quick: bool,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Optional config file of `key = value` lines (keys match the long flag names); flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Write the finished artifact in one shot; stdout when no path was given.
fn deliver(outcome: &Outcome) -> Result<(), CliError> {
    match &outcome.output {
        Some(path) => {
            fs::write(path, &outcome.content).map_err(|e| CliError::Io(path.clone(), e))
        }
        None => {
            print!("{}", outcome.content);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Commands::Spectrum(args) => run::cmd_spectrum(args),
        Commands::Frustration(args) => run::cmd_frustration(args),
        Commands::Cheeger(args) => run::cmd_cheeger(args),
        Commands::Bounds(args) => run::cmd_bounds(args),
        Commands::Verify(args) => run::cmd_verify(args),
    };
    match result.and_then(|outcome| deliver(&outcome).map(|()| outcome.success)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
