//! `gsio <command> --symbol <path> [--order N] [--grid M] [--radii r1,r2] [--out path] [--format csv|json|bin] [--seed S]`

mod run;

use std::process::ExitCode;

use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Assemble,
    Spectrum,
    Berezin,
    Rho,
    Index,
    Region,
    Factorize,
    Verdict,
    Classify,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Bin,
}

/// Finite-section numerics for generalized singular integral operators.
#[derive(Clone, Debug, Parser)]
#[command(name = "gsio", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Symbol file (JSON).
    #[arg(long = "symbol")]
    pub symbol_path: Option<std::path::PathBuf>,
    /// Section order N.
    #[arg(long, default_value_t = 64)]
    pub order: usize,
    /// Number of sample points (per axis for `region`).
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    /// Increasing radii in (0, 1).
    #[arg(long, value_delimiter = ',', default_value = "0.9,0.99")]
    pub radii: Vec<f64>,
    #[arg(long = "out")]
    pub out_path: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(4..=4096).contains(&self.order) {
            return Err(format!("--order {} outside [4, 4096]", self.order));
        }
        if !(16..=8192).contains(&self.grid) {
            return Err(format!("--grid {} outside [16, 8192]", self.grid));
        }
        if self.radii.is_empty() || self.radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err("--radii must lie in (0, 1)".into());
        }
        if self.command != Command::Verify && self.symbol_path.is_none() {
            return Err("--symbol is required".into());
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if let Err(msg) = cfg.validate() {
        eprintln!("error reason=usage {msg}");
        return ExitCode::from(1);
    }
    if let Some(n) = std::env::var("GSIO_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        gsio_core::set_threads(n);
    }
    match run::run_command(&cfg) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error reason={} {e}", e.reason());
            ExitCode::from(if e.is_abstention() { 2 } else { 1 })
        }
    }
}
