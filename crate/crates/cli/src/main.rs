// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;
use surfham_cli::args::Cli;

fn main() -> ExitCode {
    match surfham_cli::run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
