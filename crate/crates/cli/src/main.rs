//! `upset`: command-line front end for the universal point set toolkit.
//!
//! Exit codes: 0 success, 1 precondition violation (JSON error object on
//! stdout), 2 inconclusive search, 64 usage error.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use output::{failure, write_stdout, Manifest};

const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let manifest = Manifest::start(&cli.command, &argv[1..]);
    match commands::dispatch(&cli.command) {
        Ok(out) => {
            let code = out.exit_code;
            out.emit(manifest);
            ExitCode::from(code)
        }
        Err(err) => {
            write_stdout(&failure(&err, manifest));
            ExitCode::from(1)
        }
    }
}
