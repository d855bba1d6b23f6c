use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cuntz_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{}", outcome.rendered);
            if let Some(message) = &outcome.failure {
                eprintln!("validation failed: {message}");
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
