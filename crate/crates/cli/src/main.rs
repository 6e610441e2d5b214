//! Batch front end: one command per run, JSON or CSV report out.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use crate::commands::Command;
use crate::report::{CliError, Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "quasitorus",
    version,
    about = "Reproducible computations on torus sequence groups"
)]
struct Args {
    /// Computation to run.
    #[arg(long, value_enum)]
    command: Command,

    /// Parameters as inline JSON or a path to a JSON file.
    #[arg(long, default_value = "{}")]
    params: String,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Seed for every sampled check.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Include wall-clock timing (makes reports non-reproducible byte for byte).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

fn run(args: &Args) -> Result<Report, CliError> {
    let params = input::load_params(&args.params)?;
    let start = Instant::now();
    let mut report = commands::dispatch(args.command, params, args.seed)?;
    if args.timing {
        report.set_elapsed(start.elapsed());
    }
    Ok(report)
}

fn emit(args: &Args, report: &Report) -> Result<(), CliError> {
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let body = report.render(format)?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| CliError::Io(path.display().to_string(), e))
        }
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Io("stdout".into(), e)),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() {
                report::EXIT_PARAMETER
            } else {
                0
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = run(&args).and_then(|r| emit(&args, &r).map(|()| r));
    match outcome {
        Ok(r) if r.passed() => ExitCode::SUCCESS,
        Ok(r) => {
            for c in r.failed_checks() {
                eprintln!("verification failed: {c}");
            }
            ExitCode::from(report::EXIT_POSTCONDITION)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
