mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{Failure, EXIT_FAILURE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_FAILURE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Run { run, check_every } => commands::run(run, *check_every, true),
        Command::Verify { run } => commands::run(run, 1, false),
        Command::Bench { run, reps } => commands::bench(run, *reps),
        Command::Gen {
            family,
            n,
            m,
            seed,
            out,
        } => commands::gen(*family, *n, *m, *seed, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
