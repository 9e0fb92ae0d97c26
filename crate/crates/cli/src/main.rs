use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crw_cli::commands::{cmd_point, cmd_sweep, cmd_verify, cmd_windows, SweepArgs, SweepFormat};
use crw_cli::error::{CliError, EXIT_INPUT, EXIT_OK};
use crw_cli::load_config;
use crw_core::DEFAULT_WINDOW_THRESHOLD;

/// Single-photon scattering off cavity clusters in a coupled-resonator waveguide.
#[derive(Debug, Parser)]
#[command(name = "crw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Amplitudes and probabilities at one wavenumber.
    Point {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        k: f64,
    },
    /// Reflection/transmission spectrum over a k grid.
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intervals of near-perfect reflection.
    Windows {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = DEFAULT_WINDOW_THRESHOLD, allow_negative_numbers = true)]
        threshold: f64,
    },
    /// Compare the closed forms against the direct linear solve.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    k_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    k_max: f64,
    #[arg(long)]
    points: usize,
}

impl GridArgs {
    fn sweep(&self) -> SweepArgs {
        SweepArgs {
            k_min: self.k_min,
            k_max: self.k_max,
            points: self.points,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    JsonLines,
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Point { config, k } => {
            let cluster = load_config(&config)?;
            emit(&cmd_point(&cluster, k)?, None)?;
        }
        Command::Sweep { grid, format, out } => {
            let cluster = load_config(&grid.config)?;
            let format = match format {
                Format::Csv => SweepFormat::Csv,
                Format::JsonLines => SweepFormat::JsonLines,
            };
            emit(&cmd_sweep(&cluster, grid.sweep(), format)?, out.as_ref())?;
        }
        Command::Windows { grid, threshold } => {
            let cluster = load_config(&grid.config)?;
            emit(&cmd_windows(&cluster, grid.sweep(), threshold)?, None)?;
        }
        Command::Verify {
            config,
            samples,
            seed,
        } => {
            let cluster = load_config(&config)?;
            let (doc, code) = cmd_verify(&cluster, samples, seed)?;
            emit(&doc, None)?;
            return Ok(code);
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
