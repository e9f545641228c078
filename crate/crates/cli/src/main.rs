mod args;
mod commands;
mod failure;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use failure::EXIT_PARAMETER;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_PARAMETER),
            };
        }
    };
    let g = &cli.global;
    let result = match &cli.command {
        Command::Ism(a) => commands::ism::run(g, a),
        Command::Micmac(a) => commands::micmac::run(g, a),
        Command::Audit(a) => commands::audit::run(g, a),
        Command::Elicit(a) => commands::elicit::run(g, a),
        Command::Survey(a) => commands::survey::run(g, a),
        Command::Taxonomy(a) => commands::taxonomy::run(g, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
