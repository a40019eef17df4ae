use std::fs;
use std::path::{Path, PathBuf};

use crate::args::{Format, OutArgs};
use crate::{CliError, Io};

/// The requested format, or the one implied by the `--out` extension.
pub fn format(out: &OutArgs, default: Format) -> Format {
    if let Some(f) = out.format {
        return f;
    }
    match out
        .out
        .as_deref()
        .and_then(Path::extension)
        .and_then(|e| e.to_str())
    {
        Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        Some("txt") => Format::Text,
        _ => default,
    }
}

fn resolve(path: &Path, io: &Io<'_>) -> PathBuf {
    match &io.out_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

/// Write `body` to `--out` (creating parent directories) or to stdout.
pub fn emit(out: &OutArgs, io: &mut Io<'_>, body: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => {
            let path = resolve(path, io);
            let io_err = |source| CliError::Io {
                path: path.clone(),
                source,
            };
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(io_err)?;
            }
            fs::write(&path, body).map_err(io_err)?;
            writeln!(io.stdout, "wrote {}", path.display()).map_err(io_err)
        }
        None => {
            let res = if body.ends_with('\n') {
                write!(io.stdout, "{body}")
            } else {
                writeln!(io.stdout, "{body}")
            };
            match res {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                res => res.map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                }),
            }
        }
    }
}

pub fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Usage(format!("{command} does not support {format:?} output"))
}
