//! `evocut` command line: generate growth runs, analyze edge lists,
//! sweep parameter grids.
//!
//! Exit codes are fixed for scripting: 0 success, 1 usage or validation
//! error, 2 I/O error.

mod analyze;
mod generate;
mod report;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use evocut_core::stats::Normalization;

#[derive(Debug)]
pub enum CliError {
    /// Bad usage, config or input contents.
    Validation(String),
    /// Filesystem trouble.
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<evocut_core::EvolutionError> for CliError {
    fn from(e: evocut_core::EvolutionError) -> Self {
        match e {
            evocut_core::EvolutionError::FileLoad { .. } => CliError::Io(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub fn io_error(context: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", context.display()))
}

#[derive(Parser)]
#[command(
    name = "evocut",
    version,
    about = "Cut-driven network growth models and degree-distribution analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NormArg {
    #[value(name = "by_n")]
    ByN,
    #[value(name = "by_2m")]
    By2m,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::ByN => Normalization::ByN,
            NormArg::By2m => Normalization::ByTwoM,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a growth config and write edge list, trace and manifest
    Generate {
        /// JSON run config
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing)
        #[arg(long)]
        out: PathBuf,
        /// Override the config's seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Analyze an edge list: degree histogram, fits, verdict
    Analyze {
        /// Edge-list file (one `u v` pair per line)
        edgelist: PathBuf,
        /// Fixed power-law cutoff (default: KS-minimizing scan)
        #[arg(long)]
        kmin: Option<usize>,
        /// p(k) normalization used for emitted points and plots
        #[arg(long, value_enum, default_value_t = NormArg::ByN)]
        norm: NormArg,
        /// Also render a log-log scatter with fit overlays
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Run a (k, seed) grid from a base config and summarize the fits
    Sweep {
        /// JSON base run config
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated neighborhood radii
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        /// Comma-separated seeds
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<u64>,
        /// Output directory for per-run subdirectories and summary.csv
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Generate { config, out, seed } => generate::cmd_generate(&config, &out, seed),
        Command::Analyze {
            edgelist,
            kmin,
            norm,
            plot,
        } => analyze::cmd_analyze(&edgelist, kmin, norm.into(), plot.as_deref()),
        Command::Sweep {
            config,
            k,
            seeds,
            out,
        } => sweep::cmd_sweep(&config, &k, &seeds, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
