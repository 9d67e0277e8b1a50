mod args;
mod commands;
mod error;
mod output;
mod program;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Cap the worker pool from `QFOUNDRY_THREADS` when set.
fn configure_threads() -> Result<(), error::CliError> {
    let Ok(raw) = std::env::var("QFOUNDRY_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| error::CliError::Usage(format!("QFOUNDRY_THREADS={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| error::CliError::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads().and_then(|()| commands::run(&cli));
    match result {
        Ok(outcome) => {
            let text = if cli.csv {
                output::to_csv(&outcome.report)
            } else {
                serde_json::to_string_pretty(&outcome.report).expect("json") + "\n"
            };
            print!("{text}");
            for f in &outcome.failures {
                eprintln!("failed check: {f}");
            }
            if outcome.passed {
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
