//! Command-line driver: orbit traces, residual scans, plots and the
//! verification suites.

pub mod config;
pub mod error;
pub mod orbit;
pub mod output;
pub mod plot;
pub mod sampling;
pub mod scan;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use projbill::FieldMode;

use config::{Config, Settings};
use error::CliError;
use output::OutDir;

#[derive(Debug, Parser)]
#[command(name = "projbill", version, about = "Projective billiards: orbits, closure scans and verification suites")]
pub struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Field override.
    #[arg(long, global = true, value_enum)]
    pub field: Option<FieldArg>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FieldArg {
    F64,
    Complex,
    Rational,
}

impl From<FieldArg> for FieldMode {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::F64 => FieldMode::Real,
            FieldArg::Complex => FieldMode::Complex,
            FieldArg::Rational => FieldMode::Rational,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate the billiard map from `run.s`, `run.t`.
    Orbit,
    /// Closure residual on a grid of initial parameters.
    Scan,
    /// SVG of the pieces, their frames and the orbit of `run.s`, `run.t`.
    Plot,
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    RightSpherical,
    SphericalProjection,
    Asymptotics,
    BirkhoffRank,
    #[value(name = "planarity-3d")]
    Planarity3d,
}

/// Everything a subcommand needs.
pub struct Context {
    pub config: Config,
    pub settings: Settings,
    pub out: OutDir,
}

/// Runs the parsed command; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> Result<bool, CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let settings = config.settings(cli.field.map(Into::into), cli.tol, cli.grid, cli.seed);
    if settings.grid == 0 {
        return Err(CliError::Usage("grid must be positive".into()));
    }
    let ctx = Context {
        config,
        settings,
        out: OutDir::new(&cli.out)?,
    };
    match cli.command {
        Command::Orbit => orbit::run(&ctx),
        Command::Scan => scan::run(&ctx),
        Command::Plot => plot::run(&ctx),
        Command::Verify { suite } => verify::run(&ctx, suite),
    }
}

/// Instantiates `$body` with the scalar type `$s` of the selected field.
#[macro_export]
macro_rules! with_field {
    ($field:expr, $s:ident => $body:expr) => {
        match $field {
            projbill::FieldMode::Real => {
                type $s = f64;
                $body
            }
            projbill::FieldMode::Complex => {
                type $s = num_complex::Complex64;
                $body
            }
            projbill::FieldMode::Rational => {
                type $s = projbill::Rational;
                $body
            }
        }
    };
}
