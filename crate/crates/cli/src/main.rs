//! `quadzeta`: evaluation, identity checks and zero census for the
//! quadrilateral zeta function `Q(s,a)`.
//!
//! Exit codes: 0 success, 1 domain error (e.g. a pole), 2 numerical failure
//! or failed verification, 3 bad arguments.

mod commands;
mod input;
mod output;
mod store;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use input::{AlphaArg, ComplexArg, RectArg};
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "quadzeta", version, about = "Quadrilateral zeta function Q(s,a)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Absolute tolerance for evaluation, or the pass threshold for `verify`
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Grid size for scans and exports
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Seed for randomized grids
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate Z, P, Q and ξ_Q at one point
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        s: ComplexArg,
        #[arg(long)]
        a: AlphaArg,
    },
    /// Residual checks of the exact identities
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Extra random points added to the fixed grid
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Real zeros of Q(σ,a) on an interval
    ScanReal {
        #[arg(long)]
        a: AlphaArg,
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
    },
    /// The threshold a₀ where Q(σ,a) has a double zero at σ = 1/2
    FindA0,
    /// Interior real zeros on (0,1) and the resulting verdict
    Classify {
        #[arg(long)]
        a: AlphaArg,
    },
    /// The interior zero of Z(σ,a) for a < 1/6
    BetaZ {
        #[arg(long)]
        a: AlphaArg,
    },
    /// Non-real zeros with |Im s| < T
    Count {
        #[arg(long = "T", alias = "t")]
        t: f64,
        #[arg(long)]
        a: AlphaArg,
    },
    /// N(T) against the Riemann–von Mangoldt main term
    Rvm {
        #[arg(long = "T", alias = "t")]
        t: f64,
        #[arg(long)]
        a: AlphaArg,
    },
    /// Sign changes of ξ_Q on the critical line
    Hardy {
        #[arg(long)]
        a: AlphaArg,
        #[arg(long, default_value_t = 0.0)]
        t_lo: f64,
        #[arg(long)]
        t_hi: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        /// Append the zeros to this JSONL store
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Zeros in a rectangle by subdivision and Newton refinement
    Locate {
        #[arg(long)]
        a: AlphaArg,
        /// sigma_lo,sigma_hi,t_lo,t_hi
        #[arg(long, allow_hyphen_values = true)]
        rect: Option<RectArg>,
        #[arg(long, default_value_t = 10)]
        depth: u32,
        /// Re-refine the zeros recorded in this JSONL store instead of searching
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Append the zeros to this JSONL store
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Q(s, r/q) against its Dirichlet-character decomposition
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        s: ComplexArg,
        /// Exact fraction r/q
        #[arg(long)]
        a: AlphaArg,
    },
    /// (x, y) data for plots
    ExportFigure {
        #[arg(value_enum)]
        kind: Figure,
        /// Fixed a (for the σ sweeps)
        #[arg(long)]
        a: Option<AlphaArg>,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Fe,
    ClosedForm,
    Positivity,
    Monotonicity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Q(1/2, a) over a
    QHalf,
    /// Q(σ, a) over σ
    QSigma,
    /// ∂Q/∂σ over σ
    DqSigma,
    /// ∂²Q/∂σ² over σ
    D2qSigma,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
