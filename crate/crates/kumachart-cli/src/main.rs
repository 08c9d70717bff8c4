//! `kumachart` — Shewhart control charts for continuous proportions on
//! (0, 1) under the Kumaraswamy distribution.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 data-file
//! parse error, 4 fit failure, 5 calibration infeasible, 6 file I/O error.

mod args;
mod commands;
mod data;
mod error;
mod grid;
mod report;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    if let Err(err) = commands::run(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
