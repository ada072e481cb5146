use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use exitrate_cli::commands::{cmd_decay, cmd_mlf, cmd_mlp, cmd_oracle_check, cmd_simulate};
use exitrate_cli::error::{exit_code, CliError};
use exitrate_cli::report::{fmt9, Report};
use exitrate_cli::scenario::{Resolved, Scenario};

/// Large-deviation decay rates of exit probabilities for randomly scaled
/// Gaussian processes.
#[derive(Debug, Parser)]
#[command(name = "exitrate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form decay rate, exit times and atom weights.
    Decay {
        scenario: PathBuf,
        /// Write the JSON results here and print a summary instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Most likely path as CSV.
    Mlp {
        scenario: PathBuf,
        #[arg(long, default_value_t = 200)]
        grid_points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the closed form with the discretized oracle.
    OracleCheck {
        scenario: PathBuf,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo exit probabilities and the empirical decay curve.
    Simulate {
        scenario: PathBuf,
        /// Comma-separated speeds.
        #[arg(long, value_delimiter = ',')]
        gammas: Option<Vec<f64>>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Estimates CSV destination (stdout by default).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Decay-curve CSV destination.
        #[arg(long)]
        curve_out: Option<PathBuf>,
    },
    /// Mittag-Leffler function E_β(z) or M-Wright density M_β(τ).
    Mlf {
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<f64>,
        #[arg(long)]
        tau: Option<f64>,
    },
    /// Print the summary of a results file.
    Report { file: PathBuf },
}

fn load(path: &Path) -> Result<Resolved, CliError> {
    Scenario::load(path)?.resolve()
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// JSON to stdout, or JSON to `out` and the summary to stdout.
fn emit_report(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => print!("{}", report.to_json()),
        Some(p) => {
            write(p, &report.to_json())?;
            print!("{}", report.summary());
        }
    }
    Ok(())
}

fn emit_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => write(p, text),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Decay { scenario, out } => {
            let r = cmd_decay(&load(&scenario)?)?;
            emit_report(&Report::Decay(r), out.as_deref())?;
        }
        Command::Mlp { scenario, grid_points, out } => {
            let csv = cmd_mlp(&load(&scenario)?, grid_points)?;
            emit_text(&csv, out.as_deref())?;
        }
        Command::OracleCheck { scenario, m, tolerance, out } => {
            let r = cmd_oracle_check(&load(&scenario)?, m, tolerance)?;
            let pass = r.pass;
            let gap = r.rel_gap;
            emit_report(&Report::OracleCheck(r), out.as_deref())?;
            if !pass {
                let e = CliError::CheckFailed(format!("relative gap {}", fmt9(gap)));
                eprintln!("error: {e}");
                return Ok(e.exit_code());
            }
        }
        Command::Simulate { scenario, gammas, samples, seed, out, curve_out } => {
            let sim = cmd_simulate(&load(&scenario)?, gammas, samples, seed)?;
            emit_text(&sim.estimates_csv()?, out.as_deref())?;
            eprint!("{}", sim.curve_summary());
            if let (Some(p), Some(csv)) = (curve_out.as_deref(), sim.curve_csv()) {
                write(p, &csv?)?;
            }
            if let Some(Err(e)) = sim.curve {
                return Ok(CliError::Engine(e).exit_code());
            }
        }
        Command::Mlf { beta, z, tau } => {
            println!("{}", fmt9(cmd_mlf(beta, z, tau)?));
        }
        Command::Report { file } => {
            print!("{}", Report::load(&file)?.summary());
        }
    }
    Ok(exit_code::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit_code::USAGE } else { exit_code::SUCCESS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
