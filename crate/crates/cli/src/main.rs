use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;

#[derive(Parser, Debug)]
#[command(name = "liebrace", version, about = "Checks for post-Lie algebras and Lie skew braces")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Dot,
    Circ,
    Triangle,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the post-Lie axioms of a structure file and scan for obstructions
    CheckPostlie { file: PathBuf },
    /// Sample the brace identity and lambda properties of a brace spec
    CheckLsb {
        file: PathBuf,
        #[arg(long, default_value_t = liebrace::lsb::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = liebrace::lsb::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = liebrace::lsb::DEFAULT_TOL)]
        tol: f64,
    },
    /// Classify a Lie algebra file
    Classify { file: PathBuf },
    /// Differentiate a brace spec at the identity
    Extract {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::Triangle)]
        which: Which,
    },
    /// Integrability obstructions for a post-Lie structure file
    Obstructions { file: PathBuf },
    /// Rebuild the existence table
    Table {
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

/// How a run ended.
pub enum Status {
    Pass,
    MathFailure,
    InputError,
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("LIEBRACE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("LIEBRACE_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match commands::run(&cli) {
        Status::Pass => ExitCode::SUCCESS,
        Status::MathFailure => ExitCode::from(1),
        Status::InputError => ExitCode::from(2),
    }
}
