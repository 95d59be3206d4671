mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use ellipsolve::exec::{configure_threads, threads_from_env};
use ellipsolve::Error;

use args::Cli;

const EXIT_USAGE: u8 = 64;
const EXIT_CONDITION: u8 = 65;
const EXIT_GRID: u8 = 66;

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Condition(_) | Error::Parameter(_) | Error::Divergent => EXIT_CONDITION,
        Error::InvalidGrid(_) | Error::Pole { .. } => EXIT_GRID,
        Error::UnresolvedErrata { .. } => 2,
        Error::NonConvergence { .. } => 3,
        Error::Domain(_)
        | Error::MissingParameter(_)
        | Error::UnknownFamily(_)
        | Error::UnknownSolution { .. }
        | Error::UnknownPde(_) => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match threads_from_env() {
        Ok(n) => configure_threads(n),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            if let Err(e) = out.write(cli.format(), cli.out.as_deref()) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(74);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
