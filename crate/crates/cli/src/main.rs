//! `wshift` — exact analysis of unilateral weighted shifts from the command
//! line. See README for the config grammar and output formats.

mod commands;
mod config;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::ThresholdMode;
use config::FamilyConfig;
use report::Format;

/// Exit codes: 0 pass/success, 1 mathematical failure (negative verdict or
/// table mismatch), 2 usage or parse error.
#[derive(Parser)]
#[command(name = "wshift", version, about = "Exact weighted-shift analysis", long_about = None)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Khyp,
    Subnormal,
    Pqh,
}

#[derive(Subcommand)]
enum Command {
    /// Print the moment sequence of a family
    Moments {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// How many moments
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Windowed k-hyponormality verdict (exit 0 pass, 1 fail)
    Check {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[arg(short, long, default_value_t = 1)]
        k: usize,
        /// Largest Hankel base index examined
        #[arg(long, default_value_t = wshift::positivity::DEFAULT_WINDOW)]
        window: usize,
        /// Test this operator power (all pieces)
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Exact back-step threshold on the squared weight
    Threshold {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[arg(short, long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Khyp)]
        mode: ModeArg,
    },
    /// Squared weights and moments of each piece of an operator power
    Decompose {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Entries shown per piece
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Regenerate the built-in threshold tables and cross-check the closed
    /// forms (exit 1 on any mismatch)
    PaperTables,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: config syntax, fraction strings, flag combinations.
    Parse(String),
    Usage(String),
    /// A domain error from the analysis library.
    Family(wshift::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Family(e) => write!(f, "invalid family: {e}"),
        }
    }
}

fn load_config(path: &PathBuf) -> Result<FamilyConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    FamilyConfig::from_json(&text)
}

fn run(cli: &Cli) -> Result<(report::Report, i32), CliError> {
    match &cli.command {
        Command::Moments { config, count } => commands::cmd_moments(&load_config(config)?, *count),
        Command::Check { config, k, window, power } => {
            commands::cmd_check(&load_config(config)?, *k, *window, *power)
        }
        Command::Threshold { config, k, power, mode } => {
            let mode = match mode {
                ModeArg::Khyp => ThresholdMode::KHyp,
                ModeArg::Subnormal => ThresholdMode::Subnormal,
                ModeArg::Pqh => ThresholdMode::Pqh,
            };
            commands::cmd_threshold(&load_config(config)?, *k, *power, mode)
        }
        Command::Decompose { config, power, count } => {
            commands::cmd_decompose(&load_config(config)?, *power, *count)
        }
        Command::PaperTables => commands::cmd_paper_tables(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => {
            print!("{}", report.render(cli.format.into()));
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                CliError::Family(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
