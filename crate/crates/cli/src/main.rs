//! `hered`: batch front end for the hereditary library.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hereditary::classes::DEFAULT_MAX_CANDIDATES;
use hereditary::Error;

#[derive(Debug, Parser)]
#[command(name = "hered", version, about = "Hereditary classes of ordered binary structures")]
pub struct Cli {
    /// Worker threads for enumeration.
    #[arg(long, global = true, env = "HP_WORKERS")]
    pub workers: Option<usize>,

    /// Per-level candidate ceiling for enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CANDIDATES)]
    pub max_candidates: usize,

    /// Write data output here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Whether a permutation contains a pattern.
    Contains {
        host: String,
        pattern: String,
        /// Treat both arguments as ostruct files.
        #[arg(long)]
        ostruct: bool,
    },
    /// Whether a permutation is simple.
    Simple { perm: String },
    /// Simple permutations of one size.
    EnumSimple {
        #[arg(long)]
        n: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Substitution decomposition tree.
    Decompose {
        /// A permutation, or an ostruct file with --ostruct.
        input: String,
        #[arg(long)]
        ostruct: bool,
    },
    /// Enumerate the class avoiding a basis.
    Avoid(AvoidArgs),
    /// Enumerate the sum-closure of generators.
    Closure(ClosureArgs),
    /// Bounds of a sum-closure up to a size.
    Bounds(BoundsArgs),
    /// Profile CSV of an archive.
    Profile {
        archive: PathBuf,
        #[arg(long)]
        include_empty: bool,
    },
    /// Power-series computations.
    #[command(subcommand)]
    Series(SeriesCommand),
    /// Members of the built-in families.
    Catalog(CatalogArgs),
    /// Comparable pairs among labeled structures.
    Antichain(AntichainArgs),
}

#[derive(Debug, Args)]
pub struct LevelOutput {
    /// Largest size to enumerate.
    #[arg(long)]
    pub max_n: usize,
    /// Write a level-set archive to this directory.
    #[arg(long)]
    pub archive: Option<PathBuf>,
    /// Include the empty structure as row 0 of the CSV.
    #[arg(long)]
    pub include_empty: bool,
}

#[derive(Debug, Args)]
pub struct AvoidArgs {
    /// Basis permutations, comma separated.
    #[arg(long)]
    pub basis: Vec<String>,
    /// Basis structures in an ostruct file.
    #[arg(long)]
    pub basis_file: Option<PathBuf>,
    #[command(flatten)]
    pub out: LevelOutput,
}

#[derive(Debug, Args)]
pub struct GeneratorArgs {
    /// Generator permutations, comma separated.
    #[arg(long = "gen")]
    pub generators: Vec<String>,
    /// Generator structures in an ostruct file.
    #[arg(long)]
    pub gen_file: Option<PathBuf>,
    /// Generator family, `NAME` or `NAME:CAP`.
    #[arg(long)]
    pub family: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[command(flatten)]
    pub generators: GeneratorArgs,
    #[command(flatten)]
    pub out: LevelOutput,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub generators: GeneratorArgs,
    #[arg(long)]
    pub max_n: usize,
    /// Print ostruct blocks even for bichains.
    #[arg(long)]
    pub ostruct: bool,
}

#[derive(Debug, Subcommand)]
pub enum SeriesCommand {
    /// Solve the sum-closure equation for its profile.
    Solve {
        /// Number of two-element generators.
        #[arg(long)]
        p: u64,
        /// Generator counts `c0,c1,…` (entries below x³ must be zero).
        #[arg(long, default_value = "")]
        k: String,
        /// Generator counts as a series file.
        #[arg(long, conflicts_with = "k")]
        k_file: Option<PathBuf>,
        #[arg(long)]
        order: usize,
    },
    /// Substitute a series into a polynomial Q(x, y).
    Residual {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        series: PathBuf,
    },
    /// Expand a quotient of polynomials in x.
    Expand {
        /// Numerator coefficients `c0,c1,…`.
        #[arg(long, required_unless_present = "num_file")]
        num: Option<String>,
        #[arg(long)]
        num_file: Option<PathBuf>,
        /// Denominator coefficients `c0,c1,…`.
        #[arg(long, required_unless_present = "den_file")]
        den: Option<String>,
        #[arg(long)]
        den_file: Option<PathBuf>,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Family name, e.g. EXCEPTIONAL_II, CRITICAL_BICHAIN_1, OSCILLATION, SEQ_FIB_K.
    pub family: String,
    /// Family parameter (m for exceptional and critical families).
    #[arg(long)]
    pub m: Option<usize>,
    /// Size for SIMPLE, OSCILLATION and posets; last index for sequences.
    #[arg(long)]
    pub n: Option<usize>,
    /// Order of the generalized Fibonacci recurrence.
    #[arg(long)]
    pub k: Option<usize>,
    /// Print ostruct blocks instead of permutations.
    #[arg(long)]
    pub ostruct: bool,
}

#[derive(Debug, Args)]
pub struct AntichainArgs {
    /// Labeled structures (ostruct blocks with `labels` lines).
    #[arg(long, required_unless_present = "endpoint_oscillations")]
    pub file: Option<PathBuf>,
    /// Use endpoint-marked oscillations of sizes `LO..HI` (inclusive).
    #[arg(long, conflicts_with = "file")]
    pub endpoint_oscillations: Option<String>,
    /// Label poset, `antichain:K` or `chain:K`.
    #[arg(long, default_value = "antichain:2")]
    pub poset: String,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ResourceCap(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let rendered = match commands::run(&cli) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, rendered).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(rendered.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
