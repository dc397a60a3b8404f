//! `psc`: command-line front end for bistellar reductions and surgery
//! certificates.
//!
//! Exit codes: 0 success or verified, 1 checked failure (refuted
//! certificate, exhausted search, non-free action), 2 input error.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psc_core::reduction::Mode;

#[derive(Debug, Parser)]
#[command(name = "psc", version, about = "Bistellar reductions and equivariant surgery certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Polytope JSON -> dual complex JSON
    BuildDual(Io),
    /// List applicable bistellar moves of a complex
    Moves {
        #[command(flatten)]
        io: Io,
        /// Comma-separated move types (default: all)
        #[arg(long, value_delimiter = ',')]
        types: Option<Vec<usize>>,
    },
    /// Apply a move (or a list of moves) to a complex
    Apply {
        #[command(flatten)]
        io: Io,
        /// Move JSON, a JSON array of moves, or a move sequence
        #[arg(long = "move", value_name = "PATH")]
        moves: PathBuf,
    },
    /// Search for a reduction of a complex to the boundary of a simplex
    Reduce {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        search: Search,
    },
    /// Polytope JSON -> surgery certificate
    Certify {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        search: Search,
        /// Characteristic matrix for the free quotient
        #[arg(long, value_name = "PATH")]
        lambda: Option<PathBuf>,
        /// Where to write the positive-scalar-curvature statement
        #[arg(long, value_name = "PATH")]
        statement: Option<PathBuf>,
    },
    /// Recheck an untrusted certificate
    Verify(Io),
    /// Check the vertex-minor criterion for a characteristic matrix
    CheckFreeness {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_name = "PATH")]
        lambda: PathBuf,
    },
    /// Emit the built-in polytope corpus, or one member by name
    Examples {
        name: Option<String>,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Io {
    /// Input file; standard input when absent or "-"
    input: Option<PathBuf>,
    /// Output file; standard output when absent
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Free,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Free => Mode::Free,
        }
    }
}

#[derive(Debug, Args)]
struct Search {
    #[arg(long, value_enum, default_value = "strict")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    max_steps: u64,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code.into(),
        Err(diag) => {
            diag.emit();
            ExitCode::from(2)
        }
    }
}
