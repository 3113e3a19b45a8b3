mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Scan(args) => commands::scan(args),
        Command::Simulate(args) => commands::simulate(args),
        Command::Compare(args) => commands::compare(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = commands::exit_code(err.kind());
            eprintln!(
                "{}",
                json!({ "error": err.kind().as_str(), "message": err.to_string(), "exit_code": code })
            );
            ExitCode::from(code as u8)
        }
    }
}
