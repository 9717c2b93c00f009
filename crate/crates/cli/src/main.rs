//! `ctrl-iso`: exact isomorphism and walk-matrix tools for graphs in graph6.
//!
//! Every command prints one JSON object on stdout. Exit status is 0 for a
//! decision, 1 for an error and 2 for an inconclusive isomorphism verdict.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Outcome;

#[derive(Parser)]
#[command(name = "ctrl-iso", version, about = "Exact walk-matrix isomorphism testing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide isomorphism of the first graphs of two files.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Output is always JSON; accepted for compatibility.
        #[arg(long)]
        json: bool,
        /// Largest order searched exhaustively when neither graph is controllable.
        #[arg(long, default_value_t = ctrl_iso::iso::DEFAULT_BRUTEFORCE_MAX)]
        bruteforce_max: usize,
    },
    /// Controllability of every graph in a file.
    Controllable { file: PathBuf },
    /// Characteristic polynomial coefficients, lowest degree first.
    Spectrum {
        file: PathBuf,
        /// Also the complement's characteristic polynomial.
        #[arg(long)]
        complement: bool,
        /// Also det(tI - J - A).
        #[arg(long)]
        generalized: bool,
    },
    /// Color refinement of the first graphs of two files.
    Refine {
        a: PathBuf,
        b: PathBuf,
        /// Print a doubly stochastic witness S with S·A = B·S.
        #[arg(long)]
        witness: bool,
    },
    /// Walk-counting sentences in two-variable counting logic.
    C2 {
        action: C2Action,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        degree_bound: u64,
        /// Graphs to check (stdin when omitted).
        file: Option<PathBuf>,
    },
    /// Fraction of controllable graphs among seeded random samples.
    Survey {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// Worker threads (defaults to available parallelism).
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum C2Action {
    Emit,
    Check,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Iso {
            a, b, bruteforce_max, ..
        } => commands::iso(&a, &b, bruteforce_max),
        Command::Controllable { file } => commands::controllable(&file),
        Command::Spectrum {
            file,
            complement,
            generalized,
        } => commands::spectrum(&file, complement, generalized),
        Command::Refine { a, b, witness } => commands::refine(&a, &b, witness),
        Command::C2 {
            action,
            q,
            r,
            degree_bound,
            file,
        } => match action {
            C2Action::Emit => commands::c2_emit(q, r, degree_bound),
            C2Action::Check => commands::c2_check(q, r, degree_bound, file.as_deref()),
        },
        Command::Survey {
            n,
            samples,
            seed,
            threads,
        } => commands::survey(n, samples, seed, threads),
    }
}

fn main() -> ExitCode {
    // clap's own usage-error status (2) would read as "inconclusive"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => {
            println!("{}", outcome.json);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
