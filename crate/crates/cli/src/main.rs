//! `tailormap` command-line entry point.

mod args;
mod commands;
mod config;
mod error;

use clap::{CommandFactory, Parser};

use args::{Cli, Command};
use error::{CliError, CliResult};

fn run() -> CliResult<()> {
    let argv = config::merge(&Cli::command(), std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            e.print().ok();
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Invalid("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Invalid(e.to_string()))?;
    }
    match cli.command {
        Command::Tree { kind } => commands::tree(kind, cli.seed),
        Command::Transform(a) => commands::transform(a),
        Command::Solve(a) => commands::solve(a, cli.seed),
        Command::Vqe(a) => commands::vqe_curve(a, cli.seed),
    }
}

fn main() {
    if let Err(e) = run() {
        match &e {
            CliError::Usage(u) => {
                u.print().ok();
            }
            other => eprintln!("error: {other}"),
        }
        std::process::exit(e.exit_code());
    }
}
