//! `phasetorus`: reduce spectra, evolve lattice states and export torus figures.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 incommensurable
//! spectrum, 3 enumeration cap exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Debug, Parser)]
#[command(name = "phasetorus", version, about = "Exact discrete evolution on the phase torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Spectrum file: one rational (or float) energy per line.
    #[arg(long, global = true)]
    pub spectrum: Option<PathBuf>,
    /// State file: `amps:` then one rational per line, optional `step: n`.
    #[arg(long, global = true)]
    pub state: Option<PathBuf>,
    /// Rationalization tolerance for float spectra.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    /// Largest denominator accepted when rationalizing.
    #[arg(long, global = true, default_value = "1000000000", value_parser = parse_big)]
    pub max_den: BigInt,
    /// Working precision in bits for numeric Born values.
    #[arg(long, global = true, default_value_t = 128)]
    pub precision: u32,
    /// First step.
    #[arg(long, global = true, value_parser = parse_big)]
    pub from: Option<BigInt>,
    /// Number of steps.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// Bound on enumerations and brute-force scans.
    #[arg(long, global = true, default_value = "1000000", value_parser = parse_big)]
    pub cap: BigInt,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a spectrum to offset, unit, integer levels and modulus N.
    Reduce,
    /// Advance a state and print its lattice phases.
    Evolve {
        #[arg(long, default_value = "1", value_parser = parse_big, allow_hyphen_values = true)]
        steps: BigInt,
    },
    /// Minimal period, recurrence check and distinct-state counts.
    Period,
    /// Born probabilities: against an analysis state, or per energy eigenstate.
    Born {
        #[arg(long)]
        analysis: Option<PathBuf>,
    },
    /// Compare lattice states with continuous evolution at lattice times.
    Fidelity,
    /// Export the torus trajectory as CSV or SVG.
    Torus,
    /// Write a random commensurable spectrum.
    Randspec {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 50)]
        bound: u64,
    },
    /// Growth of log10 N with dimension over random spectra.
    Stats {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        bound: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn parse_big(s: &str) -> Result<BigInt, String> {
    s.trim().parse::<BigInt>().map_err(|e| format!("not an integer: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
