//! Command-line front end for the cplaw spectral library.
//!
//! Exit status contract: 0 success, 1 usage error (bad flags or
//! parameters outside the domain), 2 numerical failure (legal inputs
//! the computation could not serve). A numerical failure prints one
//! JSON object on stderr with a stable machine-readable `error` kind;
//! stdout carries only the requested document.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use cplaw::{EnvelopeError, PError, PointError, SolverError, SolverSettings, VariationalError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cplaw",
    version,
    about = "Spectral bounds and eigenvalues for -Delta - A/r + B sgn(q) r^q"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Emit JSON instead of CSV.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (the default; the flag exists so scripts can be explicit).
    #[arg(long, global = true)]
    csv: bool,
    /// Output path; relative paths land in the output directory
    /// (config out-dir, else $CPLAW_OUT_DIR, else the working dir).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Eigenvalue bisection tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Radial grid resolution.
    #[arg(long, global = true)]
    grid_steps: Option<usize>,
    /// Forced outer cutoff; omitted selects the adaptive rule.
    #[arg(long, global = true)]
    r_max: Option<f64>,
    /// key=value config file (keys: tol, grid-steps, r-max, out-dir).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// P-numbers: exact, tabulated, solver-inverted, or the Gaussian bound
    Pnum(commands::PnumArgs),
    /// Bound ladder and the best bracket for one state
    Bounds(commands::BoundsArgs),
    /// Shooting eigenvalue of the reduced or pure power-law problem
    Exact(commands::ExactArgs),
    /// Bounds-versus-eigenvalue dataset at a standard exponent
    Figure(commands::FigureArgs),
    /// Recompute the embedded P table and report deviations
    Table1(commands::Table1Args),
    /// Bound and eigenvalue records over a beta grid
    Sweep(commands::SweepArgs),
}

/// Everything a command needs besides its own flags.
pub(crate) struct Ctx {
    pub json: bool,
    pub out: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub settings: SolverSettings,
}

impl Ctx {
    pub fn dest(&self, default_name: Option<&str>) -> output::Dest {
        output::resolve(self.out.as_deref(), &self.out_dir, default_name)
    }
}

/// The two failure classes behind the exit-status contract. Usage
/// errors are the caller's to fix; numerical failures carry a stable
/// kebab-case kind so scripts can dispatch without parsing prose.
pub(crate) enum Failure {
    Usage(String),
    Numerical { kind: &'static str, message: String },
}

impl Failure {
    pub fn numerical(kind: &'static str, err: impl std::fmt::Display) -> Self {
        Failure::Numerical {
            kind,
            message: err.to_string(),
        }
    }

    pub fn io(err: impl std::fmt::Display) -> Self {
        Failure::numerical("io", err)
    }
}

pub(crate) fn classify_solver(err: SolverError) -> Failure {
    let kind = match &err {
        SolverError::InvalidGrid | SolverError::Domain(_) => {
            return Failure::Usage(err.to_string())
        }
        SolverError::NoBracket { .. } => "no-bracket",
        SolverError::NoConvergence => "no-convergence",
        SolverError::GridTooSmall { .. } => "grid-too-small",
        SolverError::BracketConstruction { .. } => "bracket-construction",
    };
    Failure::numerical(kind, err)
}

pub(crate) fn classify_p(err: PError) -> Failure {
    match err {
        PError::NotExact { .. } | PError::OutOfTable { .. } => Failure::Usage(err.to_string()),
        PError::SignMismatch { .. } => Failure::numerical("sign-mismatch", err),
        PError::Domain(inner) => Failure::Usage(inner.to_string()),
        PError::Solver(inner) => classify_solver(inner),
        PError::SpecFun(inner) => Failure::numerical("gamma-domain", inner),
    }
}

pub(crate) fn classify_envelope(err: EnvelopeError) -> Failure {
    match err {
        EnvelopeError::NoMinimum { .. } => Failure::numerical("no-minimum", err),
        EnvelopeError::InvalidKind { .. }
        | EnvelopeError::InvalidExponent { .. }
        | EnvelopeError::InvalidRadius { .. } => Failure::Usage(err.to_string()),
        EnvelopeError::P(inner) => classify_p(inner),
        EnvelopeError::Domain(inner) => Failure::Usage(inner.to_string()),
    }
}

pub(crate) fn classify_variational(err: VariationalError) -> Failure {
    match err {
        VariationalError::NoRoot => Failure::numerical("no-root", err),
        VariationalError::DOptimizationFailed { .. } => {
            Failure::numerical("d-optimization-failed", err)
        }
        VariationalError::InvalidShape { .. } => Failure::Usage(err.to_string()),
        VariationalError::Domain(inner) => Failure::Usage(inner.to_string()),
        VariationalError::SpecFun(inner) => Failure::numerical("gamma-domain", inner),
    }
}

pub(crate) fn classify_point(err: PointError) -> Failure {
    match err {
        PointError::Solver(inner) => classify_solver(inner),
        PointError::Envelope(inner) => classify_envelope(inner),
        PointError::Variational(inner) => classify_variational(inner),
        PointError::P(inner) => classify_p(inner),
        PointError::Domain(inner) => Failure::Usage(inner.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version arrive as "errors" that print to
            // stdout and exit cleanly; real parse errors exit 1.
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical { kind, message }) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": kind, "message": message })
            );
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = build_ctx(&cli.common)?;
    match &cli.command {
        Command::Pnum(args) => commands::pnum(&ctx, args),
        Command::Bounds(args) => commands::bounds(&ctx, args),
        Command::Exact(args) => commands::exact(&ctx, args),
        Command::Figure(args) => commands::figure(&ctx, args),
        Command::Table1(_) => commands::table1(&ctx),
        Command::Sweep(args) => commands::sweep(&ctx, args),
    }
}

/// Solver settings and output routing: flags win over the config
/// file, the config file wins over environment and library defaults.
fn build_ctx(common: &Common) -> Result<Ctx, Failure> {
    let file = match &common.config {
        Some(path) => config::load(path).map_err(Failure::Usage)?,
        None => config::FileConfig::default(),
    };
    let defaults = SolverSettings::default();
    let settings = SolverSettings {
        steps: common
            .grid_steps
            .or(file.grid_steps)
            .unwrap_or(defaults.steps),
        r_min: defaults.r_min,
        r_max: common.r_max.or(file.r_max),
        energy_tolerance: common.tol.or(file.tol).unwrap_or(defaults.energy_tolerance),
    };
    let out_dir = file
        .out_dir
        .or_else(|| std::env::var_os("CPLAW_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    Ok(Ctx {
        json: common.json,
        out: common.out.clone(),
        out_dir,
        settings,
    })
}
