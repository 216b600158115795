//! `haemers`: build and check dual subspace representations.
//!
//! Exit status: 0 success, 1 verified false, 2 usage or input error,
//! 3 search budget exhausted. Reports go to stdout; the timing footer goes
//! to stderr so stdout is identical across runs.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

mod commands;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "haemers", version, about = "Dual subspace representations, Mycielski lifts and clique bounds")]
struct Cli {
    /// Worker threads for parallel verification and search
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lift a representation of G to one of M_r(G)
    Lift(LiftArgs),
    /// Check a representation file
    Verify(VerifyArgs),
    /// Exhaustive existence search over GF(p)
    Search(SearchArgs),
    /// Recursion table and clique lower bound for M_r(K_m)
    Bounds(BoundsArgs),
    /// Exact fractional chromatic number
    Chif(ChifArgs),
    /// Closed-form evaluators
    Formulas(FormulasArgs),
    /// Build a graph and print its statistics
    Graph(GraphArgs),
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    /// Input graph spec; must be complete or edgeless (standard representation)
    #[arg(long, conflicts_with = "rep", required_unless_present = "rep")]
    pub graph: Option<String>,
    /// Input representation file
    #[arg(long)]
    pub rep: Option<PathBuf>,
    /// Field for --graph: a prime p or Q
    #[arg(long, default_value = "2")]
    pub field: String,
    #[arg(long)]
    pub r: usize,
    /// Output file for the lifted representation (`-` for stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub rep: PathBuf,
    /// Only print the summary line
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub p: u32,
    /// Ambient dimension to decide
    #[arg(long, conflicts_with = "n_max", required_unless_present = "n_max")]
    pub n: Option<usize>,
    /// Find the least ambient dimension up to this bound instead
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub d: usize,
    /// Search node budget
    #[arg(long, default_value_t = haemers_core::oracle::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Maximum number of candidate subspaces
    #[arg(long, default_value_t = haemers_core::oracle::DEFAULT_CANDIDATE_CAP)]
    pub cap: usize,
    /// Fix the first vertex's subspace
    #[arg(long)]
    pub symmetry: bool,
    /// Write the witness here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub r: usize,
    /// Audit a representation of M_r(K_m) against the table
    #[arg(long)]
    pub audit: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ChifArgs {
    #[arg(long)]
    pub graph: String,
    /// Print the optimal weighting
    #[arg(long)]
    pub witness: bool,
}

#[derive(Args, Debug)]
pub struct FormulasArgs {
    /// Clique size for the lower bound
    #[arg(long)]
    pub m: Option<usize>,
    /// Base value h (rational, e.g. 5/2) for the lift bound and the chi_f formula
    #[arg(long)]
    pub h: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    /// theta-bar of G, for theta-bar of M_2(G)
    #[arg(long)]
    pub theta: Option<f64>,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long)]
    pub graph: String,
    /// Write the graph in text form (`-` for stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failed run: exit status and message.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if let Ok(v) = std::env::var("HAEMERS_MAX_CELLS") {
        match v.parse::<usize>() {
            Ok(cells) => haemers_core::linalg::set_max_cells(cells),
            Err(_) => {
                eprintln!("error: HAEMERS_MAX_CELLS must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    let start = Instant::now();
    let result = match cli.command {
        Command::Lift(a) => commands::lift(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Search(a) => commands::search(&a),
        Command::Bounds(a) => commands::bounds(&a),
        Command::Chif(a) => commands::chif(&a),
        Command::Formulas(a) => commands::formulas(&a),
        Command::Graph(a) => commands::graph(&a),
    };
    let code = match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    eprintln!("-- elapsed {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(code)
}
