//! `ccw`: equivalence tests, class partitions, code properties and derived
//! codes for constacyclic codes over GF(q), q <= 9.
//!
//! JSON goes to stdout only after a command has fully succeeded; diagnostics
//! go to stderr. Exit codes: 0 success, 3 `equiv` found no equivalence,
//! 1 `verify-tables` found a mismatch, 64 usage, 65 invalid input data,
//! 66 unreadable input file, 70 resource cap exceeded, 74 output failure.

mod commands;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use commands::{Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ccw: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Data(_) => 65,
            CliError::Input(_) => 66,
            CliError::Cap(_) => 70,
            CliError::Output(_) => 74,
        }
    }
}
