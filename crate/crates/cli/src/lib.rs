//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success, 1 domain or constraint error, 2 verification
//! failure, 64 usage error.

mod args;
mod cases;
mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable naming the directory for relative `--out` paths.
pub const OUT_DIR_VAR: &str = "EOPSI_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] eopsi::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_verification_failure() => EXIT_VERIFICATION,
            CliError::Core(_) | CliError::Io { .. } => EXIT_DOMAIN,
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

/// Where a command writes: the process streams, plus the output directory
/// taken from the environment.
pub struct Io<'a> {
    pub stdout: &'a mut (dyn Write + Send),
    pub stderr: &'a mut (dyn Write + Send),
    pub out_dir: Option<PathBuf>,
}

/// Run with the process arguments, streams and environment.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    let mut io = Io {
        stdout: &mut out,
        stderr: &mut err,
        out_dir: std::env::var_os(OUT_DIR_VAR).map(PathBuf::from),
    };
    run_with(argv, &mut io)
}

pub fn run_with<I, T>(argv: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(io.stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(io.stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".to_string())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli.command, io)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} worker threads: {e}"))),
        },
        None => commands::dispatch(&cli.command, io),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            e.exit_code()
        }
    }
}
