//! Command-line front end for `susyext`: spectra, samples, parameter scans,
//! Jacobi zero counts and the verification suites.

pub mod args;
pub mod commands;
pub mod report;
pub mod verify;

use std::path::PathBuf;

use args::{Cli, Command};
use commands::{CliError, CommandOutput};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command produced; `main` does the actual writing.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub data: String,
    pub output: Option<PathBuf>,
    pub diagnostics: String,
    pub exit_code: i32,
}

pub fn execute(cli: &Cli) -> Outcome {
    let (result, output) = match &cli.command {
        Command::Verify(a) => {
            let report = verify::run(a.suite);
            let data = if a.json { report.to_json() } else { report.to_text() };
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            return Outcome {
                data,
                output: a.output.clone(),
                diagnostics: String::new(),
                exit_code: code,
            };
        }
        Command::Spectrum(a) => (commands::spectrum(a), a.output.output.clone()),
        Command::Sample(a) => (commands::sample(a), a.output.output.clone()),
        Command::Scan(a) => (commands::scan(a), a.output.output.clone()),
        Command::Zeros(a) => (commands::zeros(a), a.output.output.clone()),
    };
    finish(result, output)
}

fn finish(result: Result<CommandOutput, CliError>, output: Option<PathBuf>) -> Outcome {
    match result {
        Ok(out) => {
            let (diagnostics, exit_code) = match &out.report {
                Some(r) if !r.passed() => (r.to_text(), EXIT_FAIL),
                _ => (String::new(), EXIT_PASS),
            };
            Outcome {
                data: out.data,
                output,
                diagnostics,
                exit_code,
            }
        }
        Err(e) => Outcome {
            data: String::new(),
            output: None,
            diagnostics: e.lines().join("\n") + "\n",
            exit_code: EXIT_USAGE,
        },
    }
}
