//! `nucleus`: concept lattices, spectral nuclei, categorical nuclei and
//! Chu reductions from the command line.
//!
//! Exit status: 0 when every report is empty, 1 when a law is violated
//! (the reports are still written), 2 on parse or structural errors, 3
//! when an equivalence search hit its cap.

mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nucleus_core::fincat::DEFAULT_SEARCH_CAP;
use nucleus_core::linalg::DEFAULT_TOL;

#[derive(Parser, Debug)]
#[command(name = "nucleus", version, about = "Nuclei of adjunctions, with machine-checked laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Relative tolerance for the singular value cut.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Replace carriers by their Karoubi envelopes before nucleus
    /// constructions.
    #[arg(long, global = true)]
    karoubi: bool,
    /// Node budget for equivalence searches.
    #[arg(long, global = true, env = "NUCLEUS_SEARCH_CAP")]
    search_cap: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Concept lattice of a context (.cxt or CSV).
    Fca { input: PathBuf },
    /// Dedekind-MacNeille completion of a poset (JSON).
    Dm { input: PathBuf },
    /// Spectral nucleus of a real matrix (CSV).
    Svd { input: PathBuf },
    /// Constructions on a category bundle (JSON).
    #[command(subcommand)]
    Cat(CatCommand),
    /// Chu spaces (JSON).
    #[command(subcommand)]
    Chu(ChuCommand),
}

#[derive(Subcommand, Debug)]
pub enum CatCommand {
    /// Check categories, functors, adjunctions and monads.
    Check { bundle: PathBuf },
    /// Nucleus of each adjunction.
    Nucleus {
        bundle: PathBuf,
        #[arg(long)]
        adjunction: Option<String>,
    },
    /// Simple nucleus of each adjunction.
    Simple {
        bundle: PathBuf,
        #[arg(long)]
        adjunction: Option<String>,
    },
    /// Little nucleus of each adjunction.
    Little {
        bundle: PathBuf,
        #[arg(long)]
        adjunction: Option<String>,
    },
    /// Karoubi envelope of each category.
    Karoubi {
        bundle: PathBuf,
        #[arg(long)]
        category: Option<String>,
    },
    /// Decide whether two categories of the bundle are equivalent.
    Equiv { bundle: PathBuf, left: String, right: String },
    /// Street nucleus of each monad, applied twice and compared.
    Street {
        bundle: PathBuf,
        #[arg(long)]
        monad: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ChuCommand {
    /// Separated-extensional reduction.
    Reduce { input: PathBuf },
}

/// Settings shared by every subcommand.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub tol: f64,
    pub format: Format,
    pub karoubi: bool,
    pub search_cap: u64,
}

/// A failure that stops the run with status 2.
#[derive(Debug)]
pub struct Failure(pub String);

/// The text to emit and the status to exit with.
pub struct Artifact {
    pub text: String,
    pub status: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(a) => {
            if let Err(e) = emit(&cli, &a.text) {
                eprintln!("nucleus: {}", e.0);
                return ExitCode::from(2);
            }
            ExitCode::from(a.status)
        }
        Err(e) => {
            eprintln!("nucleus: {}", e.0);
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure(format!("{}: cannot write: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Artifact, Failure> {
    if !(cli.tol > 0.0) || !cli.tol.is_finite() {
        return Err(Failure(format!("--tol must be positive, got {}", cli.tol)));
    }
    let search_cap = cli.search_cap.unwrap_or(DEFAULT_SEARCH_CAP);
    if search_cap == 0 {
        return Err(Failure("--search-cap must be positive".into()));
    }
    let cfg = RunConfig {
        tol: cli.tol,
        format: cli.format,
        karoubi: cli.karoubi,
        search_cap,
    };
    match &cli.command {
        Command::Fca { input } => commands::fca(input, &cfg),
        Command::Dm { input } => commands::dm(input, &cfg),
        Command::Svd { input } => commands::svd(input, &cfg),
        Command::Cat(c) => commands::cat(c, &cfg),
        Command::Chu(ChuCommand::Reduce { input }) => commands::chu_reduce(input, &cfg),
    }
}
