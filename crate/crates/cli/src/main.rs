//! `hardy-lab`: runs the numeric diagnostics from a `key = value` config and
//! writes CSV/JSON reports. Exit status 0 when every asserted invariant
//! holds, 1 on a failed invariant or numeric error, 2 on usage errors.

mod commands;
mod config;
mod data;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use hardy_core::LabError;

use config::RunConfig;
use output::Output;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Evolve,
    Lemma1,
    Convexity,
    Commutators,
    HardyScan,
    Equivalence,
    Beurling,
}

#[derive(Debug, Parser)]
#[command(
    name = "hardy-lab",
    about = "Numeric diagnostics for the Hardy uncertainty principle"
)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Path to a `key = value` config file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Seed for randomized families; overrides the `seed` key.
    #[arg(long)]
    seed: Option<u64>,
}

/// Why a run did not produce a passing report.
#[derive(Debug)]
pub enum Failure {
    /// Bad invocation, config or parameter: exit 2.
    Usage(String),
    /// Numeric or I/O failure: exit 1.
    Numeric(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        match e {
            LabError::InvalidGrid(_)
            | LabError::InvalidParameter { .. }
            | LabError::BeyondEndpoint { .. }
            | LabError::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numeric(format!("i/o: {e}"))
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", cli.config.display())))?;
    let cfg = RunConfig::parse(&text, cli.seed).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut out = Output::new(&cli.out)?;
    let checks = match cli.command {
        Command::Evolve => commands::evolve::run(&cfg, &mut out)?,
        Command::Lemma1 => commands::lemma1::run(&cfg, &mut out)?,
        Command::Convexity => commands::convexity::run(&cfg, &mut out)?,
        Command::Commutators => commands::commutators::run(&cfg, &mut out)?,
        Command::HardyScan => commands::hardy_scan::run(&cfg, &mut out)?,
        Command::Equivalence => commands::equivalence::run(&cfg, &mut out)?,
        Command::Beurling => commands::beurling::run(&cfg, &mut out)?,
    };
    for c in &checks {
        let tag = if c.pass { "ok  " } else { "FAIL" };
        println!("{tag} {} = {:e} ({} {:e})", c.name, c.value, c.relation, c.tolerance);
    }
    Ok(checks.iter().all(|c| c.pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
