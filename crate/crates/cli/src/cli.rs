//! Flag definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::source::{BasisKind, SourceKind};

#[derive(Debug, Parser)]
#[command(name = "jspec", version, about = "Jacobi spectral quadrature, transforms and a three-domain Poisson solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 17)]
    pub n_theta: usize,
    #[arg(long, default_value_t = 16)]
    pub n_phi: usize,
    #[arg(long, value_enum, default_value_t = BasisKind::Jacobi02)]
    pub basis: BasisKind,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gauss-Lobatto nodes and weights at 17 significant digits.
    Quadrature {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Rule order; the rule has N + 1 nodes.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Solve once and report per-domain errors, or dump the field for
    /// tabulated sources.
    Solve {
        #[arg(long, value_enum)]
        source: SourceKind,
        /// `r theta phi value` table for `--source file`.
        #[arg(long)]
        source_file: Option<PathBuf>,
        #[arg(long, default_value_t = 17)]
        nr: usize,
        #[command(flatten)]
        grid: GridArgs,
        /// Also write the solved field as an `r theta phi value` table.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sweep N_r and fit convergence rates.
    Converge {
        #[arg(long, value_enum)]
        source: SourceKind,
        /// Ascending N_r values, each at least 6.
        #[arg(long, value_delimiter = ',', required = true)]
        nr: Vec<usize>,
        #[command(flatten)]
        grid: GridArgs,
        /// Write 0 in the seconds column so repeated runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Collocation points with source values, in the `--source file` format.
    Grid {
        #[arg(long, value_enum)]
        source: SourceKind,
        #[arg(long, default_value_t = 17)]
        nr: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Closed-form checks; exit 0 iff every selected suite passes.
    Selftest {
        /// Run only these suites (repeatable).
        #[arg(long = "suite", value_parser = clap::builder::PossibleValuesParser::new(crate::selftest::SUITES))]
        suites: Vec<String>,
        /// Add this to one weight of each rule in the weight-sum suite.
        #[arg(long, hide = true, allow_negative_numbers = true)]
        perturb_weight: Option<f64>,
        /// Print the suite reports as JSON.
        #[arg(long)]
        json: bool,
    },
}
