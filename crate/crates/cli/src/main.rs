mod args;
mod commands;
mod render;
mod svg;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// The scenario was certified to have no solution.
    NoSolution,
    /// A verification check failed.
    Failed,
}

impl Status {
    fn code(self) -> ExitCode {
        match self {
            Status::Success => ExitCode::SUCCESS,
            Status::NoSolution => ExitCode::from(2),
            Status::Failed => ExitCode::from(1),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command {
        Command::Constants(a) => commands::constants(&a),
        Command::Solve(a) => commands::solve(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Plot(a) => commands::plot(&a),
        Command::Export(a) => commands::export(&a),
    };
    match result {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
