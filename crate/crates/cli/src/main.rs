use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qdist::{exit, CliError, CurveKind};
use qdist_core::Measure;
use qdist_harness::TrialConfig;

/// Entropic purification distance between quantum states and channels.
///
/// Exit codes: 0 success, 1 verification failures, 2 parse or argument error,
/// 3 not a density matrix, 4 dimension mismatch, 5 channel not trace preserving,
/// 6 output could not be written.
#[derive(Parser)]
#[command(name = "qdist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distances between two density matrices given as JSON files.
    StateDist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "F,sqrtF,Bures,QJSD,DE,FE")]
        measures: Vec<Measure>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Process distance between two channels given as JSON Kraus files.
    ChannelDist {
        e: PathBuf,
        f: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Plot data as x,y CSV.
    Curve {
        #[arg(value_enum)]
        kind: CurveKind,
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
        points: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Seeded randomized property suite; writes a JSON report.
    Verify {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Comma-separated property ids; all properties when omitted.
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Writes through a temporary file in the target directory so that a failed run
/// never leaves a partial file behind.
fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError {
        code: exit::IO,
        message: e.to_string(),
    };
    match output {
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io),
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::StateDist {
            a,
            b,
            measures,
            output,
        } => emit(&qdist::state_dist(&a, &b, &measures)?, output.as_deref()),
        Command::ChannelDist { e, f, output } => {
            emit(&qdist::channel_dist(&e, &f)?, output.as_deref())
        }
        Command::Curve {
            kind,
            points,
            output,
        } => emit(&qdist::curve(kind, points as usize)?, output.as_deref()),
        Command::Verify {
            seed,
            trials,
            dims,
            tolerance,
            properties,
            output,
        } => {
            let cfg = TrialConfig {
                seed,
                trials,
                dims,
                tolerance,
                properties,
            };
            let (report, text) = qdist::verify(&cfg)?;
            eprint!("{}", qdist::verify_summary(&report));
            emit(&text, output.as_deref())?;
            return Ok(if report.passed() {
                exit::OK
            } else {
                exit::VERIFY_FAILED
            });
        }
    }?;
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("qdist: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
