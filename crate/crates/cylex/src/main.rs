//! Thin command-line front end: reads a job document, runs it, prints the
//! deterministic report.
//!
//! Exit codes: 0 all required checks passed; 1 checks ran and some failed;
//! 2 invalid input; 3 resource cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use cylex::job;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "cylex", version, about = "Exact checks for cyclic, paracyclic and cylindrical modules")]
struct Cli {
    /// Path to the job document (JSON; see the README for the schema).
    #[arg(long)]
    input: PathBuf,
    /// Restrict printed degrees (must not exceed the truncation).
    #[arg(long)]
    max_degree: Option<usize>,
    /// Also print degrees outside the safe window, flagged as unreliable.
    #[arg(long = "unsafe")]
    unsafe_degrees: bool,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized probe checks.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.input.display());
            return ExitCode::from(2);
        }
    };
    let mut jobspec = match job::parse_input(&text) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(max) = cli.max_degree {
        if max > jobspec.truncation {
            eprintln!(
                "error: MAX_DEGREE_EXCEEDS_TRUNCATION: {max} > {}",
                jobspec.truncation
            );
            return ExitCode::from(2);
        }
        jobspec.options.max_degree = Some(max);
    }
    if cli.unsafe_degrees {
        jobspec.options.unsafe_degrees = true;
    }
    if let Some(seed) = cli.seed {
        jobspec.options.seed = Some(seed);
    }
    match job::run(&jobspec) {
        Ok(report) => {
            print!("{}", job::render(&report, cli.format == Format::Json));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
