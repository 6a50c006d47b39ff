mod args;
mod commands;
mod config;
mod error;
mod output;

use args::{Cli, Command};
use clap::Parser;
use error::CliError;
use std::process::ExitCode;

fn run(cli: &Cli) -> Result<Option<CliError>, CliError> {
    let settings = config::resolve(cli)?;
    let f = cli.format;
    let outcome = match &cli.command {
        Command::Transform(a) => commands::transform(a, f, &settings)?,
        Command::Spectrum(a) => commands::spectrum(a, f, &settings)?,
        Command::Norm(a) => commands::norm(a, f, &settings)?,
        Command::Kernel(a) => commands::kernel(a, f, &settings)?,
        Command::Verify(a) => commands::verify(a, f, &settings)?,
        Command::Atlas(a) => commands::atlas_command(a, f, &settings)?,
    };
    output::emit(&outcome.body, cli.output.as_deref())?;
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // --help and --version also arrive here and are not errors
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(e)) | Err(e) => {
            eprintln!("stieltjes: {e}");
            e.exit_code()
        }
    }
}
