mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exact computations on branching graphs, q-deformed representation rings
/// and coherent systems. Results are printed as JSON on stdout.
#[derive(Debug, Parser)]
#[command(name = "qbranch", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Graph selection shared by several subcommands.
#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// One of gtq, gtq-plus, gt, young.
    #[arg(long, default_value = "gtq")]
    pub graph: String,
    /// Sign of the inverse temperature for gtq: -1 or +1.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub beta: String,
    /// Deformation parameter as an exact rational.
    #[arg(long, default_value = "9/10")]
    pub q: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quantum dimension qdim(lam) as a Laurent polynomial.
    Qdim {
        #[arg(long)]
        sig: String,
        /// Also evaluate at this q.
        #[arg(long)]
        q: Option<String>,
    },
    /// Weyl dimension of a signature, or tableau count of a partition.
    Dim {
        #[arg(long, conflicts_with = "partition", required_unless_present = "partition")]
        sig: Option<String>,
        #[arg(long)]
        partition: Option<String>,
    },
    /// Splice coefficient c(lam|mu,nu) for GL(m) x GL(n) in GL(m+n).
    LrSplice {
        #[arg(long)]
        lam: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Tensor multiplicity of lam in mu ⊗ nu for GL(n).
    LrTensor {
        #[arg(long)]
        lam: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Trace of rho_n K_1^{m_1} ... K_n^{m_n} on the module lam.
    CartanMoment {
        #[arg(long)]
        sig: String,
        /// JSON array of n integers; defaults to all zeros.
        #[arg(long)]
        exponents: Option<String>,
    },
    /// Link value kappa(lam, mu).
    Link {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        lam: String,
        #[arg(long)]
        mu: String,
    },
    /// Exact row-stochasticity of every vertex in a window.
    StochasticCheck {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 2)]
        part_bound: i64,
    },
    /// Product in the normalized basis zhat.
    RingMul {
        /// Left factor: a zhat JSON list (inline or a file path).
        #[arg(long, required_unless_present = "mu")]
        x: Option<String>,
        /// Right factor: a zhat JSON list (inline or a file path).
        #[arg(long, required_unless_present = "nu")]
        y: Option<String>,
        /// Left factor as a single basis signature.
        #[arg(long, conflicts_with = "x")]
        mu: Option<String>,
        /// Right factor as a single basis signature.
        #[arg(long, conflicts_with = "y")]
        nu: Option<String>,
        /// Use the undeformed product (q = 1).
        #[arg(long)]
        classical: bool,
        /// Drop signatures with a part below this floor.
        #[arg(long, allow_hyphen_values = true)]
        floor: Option<i64>,
    },
    /// Verify a coherent system exactly.
    HarmonicCheck {
        /// Coherent-system JSON (inline or a file path).
        #[arg(long)]
        nu: String,
    },
    /// Push a vertex or probability vector down; prints the coherent system.
    Pushdown {
        #[command(flatten)]
        graph: GraphArgs,
        /// Top vertex as a JSON array.
        #[arg(long, required_unless_present = "vector")]
        top: Option<String>,
        /// Top probability vector JSON (inline or a file path).
        #[arg(long, conflicts_with = "top")]
        vector: Option<String>,
        /// Print only this level.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Level-n vector of the product of two coherent systems.
    CharProduct {
        #[arg(long)]
        nu1: String,
        #[arg(long)]
        nu2: String,
        #[arg(long)]
        level: usize,
    },
    /// Torus restriction of the character of a level vector or system.
    Charfun {
        /// L1Vector or coherent-system JSON (inline or a file path).
        #[arg(long)]
        nu: String,
        /// Used when --nu is a bare vector.
        #[arg(long, default_value = "9/10")]
        q: String,
        /// Used when --nu is a bare vector.
        #[arg(long, default_value = "gtq")]
        graph: String,
        /// Comma-separated unit complex numbers, e.g. "1,0.6+0.8i".
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Compare the restrictions of levels n+1 and n at (t, 1) and t.
    CoherenceCheck {
        #[arg(long)]
        nu: String,
        #[arg(long)]
        level: usize,
        /// Comma-separated torus point; random points are used if absent.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Down-walks from a top vertex; prints per-level histograms.
    Sample {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        top: String,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// DOT rendering of a window of the graph.
    ExportDot {
        #[command(flatten)]
        graph: GraphArgs,
        /// Half-open level range such as 0..3.
        #[arg(long, default_value = "0..3")]
        levels: String,
        #[arg(long, default_value_t = 1)]
        part_bound: i64,
        #[arg(long, default_value_t = qbranch::branching::DEFAULT_VERTEX_CAP)]
        cap: usize,
    },
    /// Run every invariant check within the given bounds.
    VerifyAll {
        #[arg(long, default_value_t = 3)]
        max_level: usize,
        #[arg(long, default_value_t = 3)]
        part_bound: i64,
        #[arg(long, default_value = "9/10")]
        q: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad input; exit code 2.
    Usage(String),
    /// A verification ran and failed; exit code 1. The report is still printed.
    Verification(String),
}

impl From<qbranch::Error> for Failure {
    fn from(e: qbranch::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(out: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{}", out.trim_end());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli.command) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(out)) => {
            emit(&out);
            eprintln!("verification failed");
            ExitCode::from(1)
        }
    }
}
