//! `fqmap` — build, score and search enumeration schemes for fermion-to-qubit
//! mappings from the command line.
//!
//! Data goes to stdout (or `--out`), diagnostics to stderr. Exit codes: 0 on
//! success, 2 for configuration errors, 3 for domain errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod format;

use format::Format;

#[derive(Debug, Parser)]
#[command(name = "fqmap", version, about = "Enumeration-scheme-aware fermion-to-qubit mappings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// N×N square lattice.
    #[arg(long, value_name = "N")]
    pub lattice: Option<usize>,
    /// Grid of N×N cells, each an n×n lattice.
    #[arg(long, num_args = 2, value_names = ["n", "N"])]
    pub cellular: Option<Vec<usize>>,
    /// Interaction graph JSON file.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    /// z, s, d, m, m+2, cz, czp, cs, csp, random, or a scheme JSON file.
    #[arg(long, default_value = "z")]
    pub scheme: String,
    /// Corner parameter of the m and m+2 patterns (default: optimal).
    #[arg(long)]
    pub x: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the qubit Hamiltonian with a cost header as JSON.
    Map {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Add a density–density term of this strength on every edge.
        #[arg(long)]
        quartic: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Layout costs of a graph and scheme.
    Cost {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Costs of the lattice patterns over a range of sizes.
    Sweep {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        /// Comma-separated subset of z,s,d,m,m+2,random.
        #[arg(long, default_value = "z,s,d,m,m+2,random")]
        patterns: String,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Qubit counts and hopping weights of the lattice mappings side by side.
    Compare {
        #[arg(long, value_name = "N")]
        lattice: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimise the p-sum over enumeration schemes.
    Search {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, value_enum, default_value = "anneal")]
        method: commands::SearchMethod,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Annealing steps per restart.
        #[arg(long)]
        iterations: Option<u64>,
        /// Independent annealing restarts with seeds seed, seed+1, ….
        #[arg(long, default_value_t = 1)]
        restarts: u64,
        /// Starting scheme (same syntax as --scheme); local search defaults
        /// to a random start.
        #[arg(long)]
        init: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Map { source, scheme, quartic, out } => commands::map(&source, &scheme, quartic, out.as_deref()),
        Command::Cost { source, scheme, p, format, out } => {
            commands::cost(&source, &scheme, p, format, out.as_deref())
        }
        Command::Sweep { n_min, n_max, step, patterns, p, seed, format, out } => {
            commands::sweep(n_min, n_max, step, &patterns, p, seed, format, out.as_deref())
        }
        Command::Compare { lattice, format, out } => commands::compare(lattice, format, out.as_deref()),
        Command::Search { source, p, method, seed, iterations, restarts, init, out } => {
            commands::search(&source, p, method, seed, iterations, restarts, init.as_deref(), out.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fqmap: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
