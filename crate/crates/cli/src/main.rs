use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use susyext_cli::args::Cli;
use susyext_cli::{execute, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = execute(&cli);
    match &outcome.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.data) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.data.as_bytes());
        }
    }
    eprint!("{}", outcome.diagnostics);
    ExitCode::from(outcome.exit_code as u8)
}
