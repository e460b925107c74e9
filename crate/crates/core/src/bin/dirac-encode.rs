use std::process::ExitCode;

use clap::Parser;
use dirac_encode::cli::{execute, Args};

fn main() -> ExitCode {
    execute(&Args::parse())
}
