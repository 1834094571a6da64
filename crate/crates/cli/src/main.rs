mod args;
mod error;
mod game;
mod lattice;
mod output;
mod sgp;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify(a) => verify::run(&a),
        Command::Lattice(a) => lattice::run(&a),
        Command::Sgp(a) => sgp::run(&a),
        Command::Game(a) => game::run(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("kunzwilf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
