use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use omega_cli::{
    limits_from_env, load, report_exit_code, report_file, resolution_text, run_corpus, to_json,
    CliError, EXIT_OK,
};

/// Depth, dimension, ω and the depth = ω criteria for graded modules.
#[derive(Parser)]
#[command(name = "omega", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Depth, dimension, codimension, pd, ω, Betti table and Hilbert series.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The four equivalent conditions and the gap-one verdict.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Runs `check` on every .gmod file below a directory.
    Corpus {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Prints the minimal free resolution.
    Resolve {
        file: PathBuf,
        /// Longest resolution computed before giving up (default: one more
        /// than the number of variables).
        #[arg(long)]
        max_length: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let limits = limits_from_env()?;
    match cli.command {
        Command::Invariants { file, json } => {
            let r = report_file(&file, false, limits)?;
            print!(
                "{}",
                if json {
                    to_json(&r) + "\n"
                } else {
                    r.to_text()
                }
            );
            Ok(EXIT_OK)
        }
        Command::Check { file, json } => {
            let r = report_file(&file, true, limits)?;
            print!(
                "{}",
                if json {
                    to_json(&r) + "\n"
                } else {
                    r.to_text()
                }
            );
            Ok(report_exit_code(&r))
        }
        Command::Corpus { dir, jobs, json } => {
            let r = run_corpus(&dir, jobs, limits)?;
            print!(
                "{}",
                if json {
                    to_json(&r) + "\n"
                } else {
                    r.to_text()
                }
            );
            Ok(r.exit_code())
        }
        Command::Resolve { file, max_length } => {
            let p = load(&file, limits)?;
            let len = max_length.unwrap_or(p.ring.nvars() + 1);
            print!("{}", resolution_text(&p, len)?);
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("omega: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
