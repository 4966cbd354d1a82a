use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Ternary-tree fermion-to-qubit mappings tailored to a molecule's excitations.
///
/// Options may also be supplied through `--config FILE`, a `key = value` file
/// whose keys are long option names. Flags given on the command line win.
#[derive(Debug, Parser)]
#[command(name = "tailormap", version, about)]
pub struct Cli {
    /// `key = value` defaults for any long option of the chosen subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a tree, write it, and print its Majorana table.
    Tree {
        #[command(subcommand)]
        kind: TreeKind,
    },
    /// Map an FCIDUMP Hamiltonian to qubits under a tree.
    Transform(TransformArgs),
    /// Exact ground state, mutual information and block entropies.
    #[command(alias = "analyze")]
    Solve(SolveArgs),
    /// RY hardware-efficient VQE over a range of layer counts.
    Vqe(VqeArgs),
}

#[derive(Debug, Subcommand)]
pub enum TreeKind {
    /// Jordan–Wigner chain on `n` modes.
    Jw {
        #[arg(short = 'n', long = "modes")]
        modes: usize,
        #[arg(short, long, default_value = "tree.txt")]
        out: PathBuf,
    },
    /// Parity x-chain over the given fermionic mode order.
    Parity {
        /// Comma-separated modes from the root down, e.g. `1,3,0,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<usize>,
        #[arg(short, long, default_value = "tree.txt")]
        out: PathBuf,
    },
    /// Tree whose x-branches encode the dominant UpCCGSD excitations.
    Tailored {
        #[arg(long)]
        fcidump: PathBuf,
        /// `top:K` or `thresh:T`.
        #[arg(long, default_value = "top:1")]
        select: String,
        /// Let single excitations compete with doubles.
        #[arg(long)]
        singles: bool,
        /// `separate` or `merged` x-branches.
        #[arg(long, default_value = "separate")]
        layout: String,
        /// Also write the singles and doubles angle matrices as `<prefix>_singles.csv` and `<prefix>_doubles.csv`.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(short, long, default_value = "tree.txt")]
        out: PathBuf,
    },
    /// Print the Majorana table of an existing tree file.
    Show { path: PathBuf },
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long)]
    pub fcidump: PathBuf,
    #[arg(long)]
    pub tree: PathBuf,
    #[arg(short, long, default_value = "hamiltonian.json")]
    pub out: PathBuf,
}

/// Inputs shared by the exact and variational solvers.
#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Qubit Hamiltonian written by `transform`.
    #[arg(long)]
    pub hamiltonian: PathBuf,
    /// Tree used for the Hamiltonian; enables particle-sector restriction.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    /// Source integrals; supplies the HF reference, electron count and spin.
    #[arg(long)]
    pub fcidump: Option<PathBuf>,
    /// Electron count of the target sector.
    #[arg(long)]
    pub electrons: Option<usize>,
    /// Spin projection of the target sector.
    #[arg(long, allow_hyphen_values = true)]
    pub sz: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// `ln` or `log2`.
    #[arg(long, default_value = "ln")]
    pub log_base: String,
    /// Search for the qubit order minimizing the MI cost.
    #[arg(long)]
    pub reorder: bool,
    #[arg(long, default_value_t = 200)]
    pub ga_population: usize,
    #[arg(long, default_value_t = 300)]
    pub ga_generations: usize,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct VqeArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Layer counts: `4`, `1,2,4` or `0-6`.
    #[arg(long, default_value = "0-6")]
    pub layers: String,
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    /// Optimizer budget per restart; defaults to max(2000, 200 × parameters).
    #[arg(long)]
    pub iterations: Option<usize>,
    /// `nelder-mead` or `rotosolve`.
    #[arg(long, default_value = "nelder-mead")]
    pub optimizer: String,
    /// `ascending`, `descending` or `brick`.
    #[arg(long, default_value = "ascending")]
    pub entangler: String,
    /// Run on the qubit order minimizing the exact state's MI cost.
    #[arg(long)]
    pub reorder: bool,
    #[arg(short, long, default_value = "vqe_curve.csv")]
    pub out: PathBuf,
    /// Write per-restart convergence traces into this directory.
    #[arg(long)]
    pub trace_dir: Option<PathBuf>,
}
