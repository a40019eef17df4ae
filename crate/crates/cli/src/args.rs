use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "eopsi",
    version,
    about = "Rational extensions of the oscillator, their exceptional orthogonal polynomials and 2D superintegrable systems"
)]
pub struct Cli {
    /// Worker threads for enumeration and batch verification.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

/// Case name and its parameters. Which flags are required depends on the case.
#[derive(Debug, Args, Clone)]
pub struct CaseArgs {
    #[arg(long)]
    pub case: String,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub m1: Option<usize>,
    #[arg(long)]
    pub m2: Option<usize>,
    /// Angular momentum, an integer or `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args, Clone)]
pub struct OutArgs {
    /// Output file; relative paths are resolved against `EOPSI_OUT_DIR` when set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Defaults to the extension of `--out`, else text.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args, Clone)]
pub struct GridArgs {
    /// `a,b`; defaults to `-12,12` on the line and `0,20` on the half-line.
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exceptional orthogonal polynomials of a 1D extension.
    Eop {
        #[command(flatten)]
        case: CaseArgs,
        /// Number of levels, lowest first.
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// A single level instead of the lowest ones.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<i64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build a 1D rational extension and print its data.
    Extend {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Finite-dimensional unitary representations of a 2D system.
    Reps {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 50)]
        pmax: u64,
        /// Keep solutions whose states are not all physical.
        #[arg(long)]
        include_unphysical: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Physical levels not reached by any representation.
    Holes {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value = "20", allow_hyphen_values = true)]
        emax: String,
        #[arg(long, default_value_t = 50)]
        pmax: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare finite-difference eigenvalues with the exact spectrum.
    VerifySpectrum {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[command(flatten)]
        grid: GridArgs,
        /// Defaults to 1e-5 (oscillator), 1e-4 (Hermite) or 1e-3 (half-line).
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Gram matrix of EOP under their weight.
    VerifyOrtho {
        #[command(flatten)]
        case: CaseArgs,
        /// Comma-separated degrees; defaults to the lowest `--count` levels.
        #[arg(long)]
        degrees: Option<String>,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact intertwining, factorization and ladder identities.
    VerifyAlgebra {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sample the potential on a grid as CSV columns x, V.
    ExportPotential {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}
