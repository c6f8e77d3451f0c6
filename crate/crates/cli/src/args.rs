use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::OutputFormat;

/// Exact computations with the Fibonacci rank of apparition and
/// α-contractions of arithmetic functions.
///
/// Configuration precedence, highest first: command-line flags, the
/// FIBCONTRACT_CACHE environment variable (cache path only), the file given
/// by --config, built-in defaults.
///
/// Exit codes: 0 success, 1 check failure, 2 usage or input error,
/// 3 factorization budget exhausted.
#[derive(Debug, Parser)]
#[command(name = "fibcontract", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Factorization cache file (overrides FIBCONTRACT_CACHE and the config file).
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Work units allowed per factorization.
    #[arg(long, global = true, value_name = "UNITS")]
    pub budget: Option<u64>,
    /// Output format for tables and reports.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write tables and reports here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Digits after the decimal point for reals.
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print F(n).
    Fib { n: u64 },
    /// Print the rank of apparition α(n).
    Alpha { n: u64 },
    /// Print the entry exponent e_n (n ≥ 2).
    EntryExponent { n: u64 },
    /// Tabulate an iterated α-contraction against its closed form.
    Contract(ContractArgs),
    /// Run verification checks.
    Verify(VerifyArgs),
    /// Emit exact values next to their predicted x² growth.
    ReportAsymptotics {
        /// Sample points, comma separated.
        #[arg(long, value_delimiter = ',')]
        x: Vec<u64>,
    },
    /// Truncated Dirichlet series of the closed forms against their Euler products.
    Series {
        /// lambda, mu, mu2 or mu3; all four when omitted.
        #[arg(long)]
        which: Option<String>,
        /// Exponents, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [2.0, 3.0])]
        s: Vec<f64>,
        /// Number of terms.
        #[arg(long)]
        n: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct ContractArgs {
    /// mu, lambda, phi, one or divisor_count.
    pub function: String,
    /// Contraction depth (same as --depth).
    #[arg(value_name = "DEPTH")]
    pub depth_pos: Option<u32>,
    /// Last row (same as --n-max).
    #[arg(value_name = "N_MAX")]
    pub n_max_pos: Option<u64>,
    #[arg(long, conflicts_with = "depth_pos")]
    pub depth: Option<u32>,
    #[arg(long, conflicts_with = "n_max_pos")]
    pub n_max: Option<u64>,
}

impl ContractArgs {
    pub fn depth(&self) -> u32 {
        self.depth.or(self.depth_pos).unwrap_or(1)
    }

    pub fn n_max(&self, default: u64) -> u64 {
        self.n_max.or(self.n_max_pos).unwrap_or(default)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    All,
    Theorem1,
    Corollary,
    Logprod,
    ConstantC,
    Asymptotics,
    PiAlpha,
    PhiIdentity,
    PhiRecursive,
    EulerProduct,
    TTables,
    ClosedForms,
    FixedPoint,
    LambdaAlpha,
    RankLemma,
    Duality,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value_t = CheckName::All)]
    pub check: CheckName,
    /// Range of the check: x for sums, N or n_max for pointwise checks.
    #[arg(long)]
    pub x: Option<f64>,
    /// Series for euler-product: lambda, mu, mu2, mu3.
    #[arg(long)]
    pub which: Option<String>,
    /// Exponent for euler-product.
    #[arg(long)]
    pub s: Option<f64>,
    /// Number of terms (euler-product, constant-c).
    #[arg(long)]
    pub n: Option<u64>,
    /// First function for theorem1 and corollary.
    #[arg(long)]
    pub f: Option<String>,
    /// Second function for theorem1 and corollary.
    #[arg(long)]
    pub g: Option<String>,
}
