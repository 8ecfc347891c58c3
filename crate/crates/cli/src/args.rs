use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qes_hubbard::spectra::lambda_grid;
use qes_hubbard::verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "qes-hubbard", version, about = "Spectra of the quasi-exactly-solvable Bose-Hubbard chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of every momentum block at one or more couplings.
    Spectrum(RunArgs),
    /// Level curves over a coupling grid, paired continuously.
    Sweep(RunArgs),
    /// Energies against momentum with the soliton band flagged (defaults f=7, λ ∈ {0, 0.5}).
    Figure2(Figure2Args),
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Compare computed eigenvalues with the published γ = 3 tables.
    Tables(TablesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Number of sites.
    #[arg(long)]
    pub f: usize,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub gamma: f64,
    /// A single value or an inclusive grid `start:stop:step`.
    #[arg(long, default_value = "0:0.5:0.01", allow_negative_numbers = true)]
    pub lambda: LambdaSpec,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Figure2Args {
    #[arg(long, default_value_t = 7)]
    pub f: usize,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Couplings to show; defaults to 0 and 0.5.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<LambdaSpec>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest chain length visited by the size-dependent suites.
    #[arg(long, default_value_t = 5)]
    pub f: usize,
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Only tables of this chain length.
    #[arg(long)]
    pub f: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LambdaSpec {
    Value(f64),
    Grid { start: f64, stop: f64, step: f64 },
}

impl LambdaSpec {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            LambdaSpec::Value(v) => vec![v],
            LambdaSpec::Grid { start, stop, step } => lambda_grid(start, stop, step).expect("validated on parse"),
        }
    }
}

impl FromStr for LambdaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let number = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{t}' is not a finite number"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(LambdaSpec::Value(number(v)?)),
            [a, b, c] => {
                let (start, stop, step) = (number(a)?, number(b)?, number(c)?);
                if step <= 0.0 {
                    return Err("grid step must be positive".into());
                }
                if stop < start {
                    return Err("grid stop must not be below start".into());
                }
                Ok(LambdaSpec::Grid { start, stop, step })
            }
            _ => Err(format!("expected a number or start:stop:step, got '{s}'")),
        }
    }
}
