//! `geozeta` command-line front end.

mod commands;
mod parse;
mod verify;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "geozeta", version, about = "Synthetic geodesic spectra, zeta functions and prime geodesic counting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic spectrum with pi(x) = floor(constant * li(x))
    Gen {
        #[arg(long)]
        xmax: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2.0)]
        constant: f64,
        /// weyl, uniform or fixed:p/q,p/q (angles in units of pi)
        #[arg(long, default_value = "weyl")]
        angles: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate log Z or log R along a line of s values
    Zeta {
        #[arg(long)]
        spectrum: PathBuf,
        /// triv, tilde or wedge-nbar:q
        #[arg(long, default_value = "triv")]
        sigma: String,
        /// re0:re1:step[,im]
        #[arg(long)]
        grid: String,
        #[arg(long)]
        lmax: f64,
        #[arg(long, default_value_t = 20)]
        mmax: u64,
        #[arg(long, value_enum, default_value = "selberg")]
        kind: commands::Kind,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        check_factorization: bool,
    },
    /// Tabulate the counting functions on a logarithmic grid
    Count {
        #[arg(long)]
        spectrum: PathBuf,
        /// boxes "t0,t1,p0,p1" in units of pi, separated by ';'
        #[arg(long, default_value = "0,1,0,1;0,1,1,2")]
        window: String,
        /// transition width in radians, 0 for a sharp window
        #[arg(long, default_value_t = 0.0)]
        margin: f64,
        /// lo:hi:n, n log-spaced points
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the invariant suite
    Verify,
    /// Fit the main term of one column of a count table
    Fit {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, value_enum)]
        model: commands::ModelArg,
        #[arg(long, default_value = "psi")]
        column: String,
    },
}

pub enum Failure {
    Validation(String),
    Verification(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Gen { xmax, seed, constant, angles, out } => commands::gen(xmax, seed, constant, &angles, &out),
        Command::Zeta { spectrum, sigma, grid, lmax, mmax, kind, out, check_factorization } => {
            commands::zeta(&spectrum, &sigma, &grid, lmax, mmax, kind, &out, check_factorization)
        }
        Command::Count { spectrum, window, margin, grid, out } => {
            commands::count(&spectrum, &window, margin, &grid, &out)
        }
        Command::Verify => verify::run(),
        Command::Fit { table, model, column } => commands::fit(&table, model, &column),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(2)
        }
    }
}
