//! `brio`: command-line front end for the Brio δ-shock Riemann solver.
//!
//! Exit codes: 0 on success, 1 on invalid input or a domain error (with an
//! error JSON on stderr), 2 when `verify` finds a failing check.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::error::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(1);
        }
    };
    match commands::run(&cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.summary(cli.command.name()));
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(1)
        }
    }
}
