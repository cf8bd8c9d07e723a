//! `abcforge`: factor, verify bounds, scan and fit.
//!
//! Exit codes: 0 success or bound holds, 1 bound fails, 2 input or
//! configuration error, 3 the bound's hypothesis is not satisfied.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use abcforge_core::arith::DEFAULT_MAX_BITS;
use abcforge_core::bounds::{DEFAULT_K, DEFAULT_KAPPA, DEFAULT_M};

#[derive(Parser, Debug)]
#[command(
    name = "abcforge",
    version,
    about = "abc triples, abcd quadruples and subexponential abc bounds"
)]
pub struct Cli {
    /// Refuse to factor integers above this many bits.
    #[arg(long, global = true, env = "ABCFORGE_FACTOR_BITS", default_value_t = DEFAULT_MAX_BITS)]
    pub factor_bits: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print rad(n), the product of the distinct primes dividing n.
    Radical { n: String },

    /// Print the prime factorization of n.
    Factor { n: String },

    /// Evaluate an abc bound on a coprime triple a + b = c.
    VerifyAbc {
        a: String,
        b: String,
        c: String,
        #[arg(long, value_enum, default_value_t = AbcBound::Thm1)]
        bound: AbcBound,
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: f64,
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        /// Constant in front of the earlier bound.
        #[arg(long, default_value_t = 1.0)]
        kappa_eps: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
    },

    /// Compare log(c/a) with the linear-forms bound for xi = b/c.
    Lfl {
        a: String,
        b: String,
        c: String,
        #[arg(long = "K", default_value_t = DEFAULT_K)]
        k: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
    },

    /// Evaluate the abcd bound on x1 + x2 + x3 + x4 = 0.
    #[command(allow_negative_numbers = true)]
    VerifyAbcd {
        x1: i64,
        x2: i64,
        x3: i64,
        x4: i64,
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: f64,
        /// Check through the reduced abc triple instead.
        #[arg(long)]
        via_reduction: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
    },

    /// Check max|x_j| <= rad(x_1 ... x_n)^M for terms summing to zero.
    #[command(allow_negative_numbers = true)]
    NConj {
        #[arg(required = true, num_args = 3..)]
        xs: Vec<String>,
        #[arg(long = "M", default_value_t = DEFAULT_M)]
        m: f64,
        /// Require pairwise coprime terms instead of no vanishing sub-sum.
        #[arg(long)]
        strong: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
    },

    /// Smallest M with omega(R) log_2^* R <= M log R for squarefree R <= rmax.
    OmegaFit { rmax: u64 },

    /// Scan abc triples with c <= cmax.
    Scan {
        #[arg(long)]
        cmax: u64,
        #[arg(long, value_enum, default_value_t = TripleMode::Exhaustive)]
        mode: TripleMode,
        /// Smoothness bound for smooth mode.
        #[arg(long = "B", default_value_t = 3)]
        smooth_bound: u64,
        #[command(flatten)]
        common: ScanArgs,
    },

    /// Scan canonical abcd quadruples with height <= hmax.
    Scan4 {
        #[arg(long)]
        hmax: u64,
        #[command(flatten)]
        common: ScanArgs,
    },

    /// Fit the smallest κ for which a bound holds over a scan.
    Fit {
        #[arg(long, value_enum)]
        bound: FitKind,
        #[arg(long, required_unless_present = "hmax", conflicts_with = "hmax")]
        cmax: Option<u64>,
        #[arg(long)]
        hmax: Option<u64>,
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
    },
}

#[derive(clap::Args, Debug)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 0.5)]
    pub tau: f64,
    /// Output file; records go to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Save progress here after every batch. Requires --out.
    #[arg(long, requires = "out")]
    pub checkpoint: Option<PathBuf>,
    /// Continue from --checkpoint if it exists.
    #[arg(long, requires = "checkpoint")]
    pub resume: bool,
    #[arg(long, env = "ABCFORGE_WORKERS")]
    pub workers: Option<usize>,
    /// Outer-loop values per batch and checkpoint.
    #[arg(long, default_value_t = 64)]
    pub batch: u64,
    /// Stop after this many batches, leaving the checkpoint in place.
    #[arg(long, hide = true)]
    pub stop_after_batches: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbcBound {
    Thm1,
    Thm1prelim,
    Thm0,
    Thm0earlier,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitKind {
    Thm1prelim,
    Thm1,
    Abcd,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleMode {
    Exhaustive,
    Smooth,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
    Human,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Human,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_INPUT)
        }
    }
}
