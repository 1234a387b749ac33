use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use forests_cli::{run, Cli, Request, PRECISION_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = cli.command.split();
    let outcome = match Request::resolve(command, args, std::env::var(PRECISION_ENV).ok()) {
        Ok(request) => run(&request),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.status);
        }
    };
    for line in &outcome.stderr {
        eprintln!("{line}");
    }
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(outcome.stdout.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(forests_cli::EXIT_DOMAIN);
    }
    ExitCode::from(outcome.status)
}
