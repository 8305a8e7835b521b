use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "tdn",
    version,
    about = "Exact Chow rings, Betti numbers and rank tables for T_{d,n} and X[n]"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Omit timing from the report.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Cap on enumerated families and nested monomials (overrides TDN_MAX_CELLS).
    #[arg(long, global = true)]
    pub max_cells: Option<u64>,
    /// Largest accepted d*n for ring computations.
    #[arg(long, global = true)]
    pub max_dn: Option<u64>,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct DnArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Poincaré polynomial, Betti numbers and Euler characteristic.
    Betti(DnArgs),
    /// Coefficients of the generating function psi.
    Series {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        order: usize,
    },
    /// Checks the generating-function identities through a given order.
    VerifyGf {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        order: usize,
    },
    /// Ranks of the graded pieces of the Chow ring.
    RingRank {
        #[command(flatten)]
        dn: DnArgs,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Degree of a top-codimension monomial.
    Integrate {
        #[command(flatten)]
        dn: DnArgs,
        /// JSON list of [subset, exponent] pairs.
        #[arg(long)]
        monomial: String,
    },
    /// Divisor/curve pairing table.
    Pairing(DnArgs),
    /// Number of boundary strata.
    Strata {
        #[arg(long)]
        n: u32,
    },
    /// Combinatorial types of stable rooted trees.
    Trees {
        #[arg(long)]
        n: u32,
    },
    /// Chow ranks of the Fulton–MacPherson space X[n].
    FmBetti {
        /// `Pm` (with --m) or a catalog name such as `P2` or `P1xP1`.
        #[arg(long)]
        space: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: usize,
    },
    /// Dual-pair products for nested families.
    Conjecture {
        #[command(flatten)]
        dn: DnArgs,
        /// JSON list of subsets; all families when omitted.
        #[arg(long)]
        family: Option<String>,
        /// JSON list of [subset, exponent] pairs for the stratum cycle.
        #[arg(long, requires = "family")]
        exponents: Option<String>,
    },
    /// Pairings of the classes eta_S with the curves C_T.
    Nef(DnArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Betti(_) => "betti",
            Command::Series { .. } => "series",
            Command::VerifyGf { .. } => "verify-gf",
            Command::RingRank { .. } => "ring-rank",
            Command::Integrate { .. } => "integrate",
            Command::Pairing(_) => "pairing",
            Command::Strata { .. } => "strata",
            Command::Trees { .. } => "trees",
            Command::FmBetti { .. } => "fm-betti",
            Command::Conjecture { .. } => "conjecture",
            Command::Nef(_) => "nef",
        }
    }
}
