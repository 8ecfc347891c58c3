mod args;
mod commands;
mod output;

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use qes_hubbard::Execution;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, invalid parameters or an unwritable output path.
    Usage(String),
    /// A check ran and failed; the report has already been written.
    Verification(String),
}

impl From<qes_hubbard::Error> for CliError {
    fn from(e: qes_hubbard::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;

fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let exec = Execution::default();
    match cli.command {
        Command::Spectrum(a) => write_output(&commands::spectrum(&a, exec)?, a.output.out.as_deref()),
        Command::Sweep(a) => write_output(&commands::sweep_cmd(&a, exec)?, a.output.out.as_deref()),
        Command::Figure2(a) => {
            let (text, summary) = commands::figure2(&a, exec)?;
            for line in summary {
                eprintln!("{line}");
            }
            write_output(&text, a.output.out.as_deref())
        }
        Command::Verify(a) => {
            let (text, ok) = commands::verify(&a, exec)?;
            write_output(&text, a.out.as_deref())?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Verification("one or more checks failed".into()))
            }
        }
        Command::Tables(a) => {
            let (text, ok) = commands::tables(&a, exec)?;
            write_output(&text, a.output.out.as_deref())?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Verification("computed values differ from a published table".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFICATION)
        }
    }
}
