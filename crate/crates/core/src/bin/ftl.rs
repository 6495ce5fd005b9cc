use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ftl_core::cli::{self, CliError, Overrides};

/// Fuzzy temporal logic decision calculus.
#[derive(Parser)]
#[command(name = "ftl", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON scenario file.
    Run {
        scenario: PathBuf,
        /// Seed for simulations (overrides the scenario's `seed`).
        #[arg(long)]
        seed: Option<u64>,
        /// Write the result here instead of the scenario's `output`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
    },
    /// Recompute a published table or figure and check it.
    Reproduce {
        /// One of: thaler-magnitude, thaler-time, fig3, fig4, fig5, fig6, subadditivity-demo
        id: String,
        /// Write the curve data (figures) or the check table here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replace every PASS/FAIL threshold.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        quiet: bool,
    },
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn execute(args: Args) -> Result<(), CliError> {
    match args.command {
        Command::Run { scenario, seed, out, quiet } => {
            let result = cli::run_scenario_file(&scenario, &Overrides { seed, out })?;
            let rendered = result.artifact.render();
            match result.path {
                Some(path) => {
                    write(&path, &rendered)?;
                    if !quiet {
                        println!("wrote {}", path.display());
                    }
                }
                None => print!("{rendered}"),
            }
            Ok(())
        }
        Command::Reproduce { id, out, tolerance, quiet } => {
            let report = cli::reproduce(&id, tolerance)?;
            let table = report.table().render();
            if let Some(path) = out {
                let data = report.curve.as_ref().map_or_else(|| table.clone(), |c| c.render());
                write(&path, &data)?;
            }
            if !quiet {
                print!("{table}");
            }
            match report.failures() {
                0 => Ok(()),
                failed => Err(CliError::ChecksFailed { failed }),
            }
        }
    }
}

fn main() -> ExitCode {
    match execute(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
