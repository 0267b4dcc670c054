use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "dold",
    version,
    about = "Dold-condition and fail-factor analysis for integer linear recurrences"
)]
pub struct Cli {
    /// Emit a JSON report (default).
    #[arg(long, global = true, overrides_with = "human")]
    pub json: bool,
    /// Emit a plain-text rendering of the report.
    #[arg(long, global = true, overrides_with = "json")]
    pub human: bool,
    /// Number of indices to scan.
    #[arg(long, global = true, value_name = "N")]
    pub horizon: Option<usize>,
    /// Largest allowed term size in bits.
    #[arg(long, global = true, value_name = "B")]
    pub max_bits: Option<u64>,
    /// Search bound for irreducibility witnesses.
    #[arg(long, global = true, value_name = "X")]
    pub prime_bound: Option<u64>,
    /// Salt for randomized modular factorization.
    #[arg(long, global = true, value_name = "S")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Recurrence coefficients r1,...,rd in U_n = r1 U_{n-1} + ... + rd U_{n-d}.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "initial"
    )]
    pub coeffs: Option<Vec<String>>,
    /// Initial terms U_1,...,U_d.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "coeffs"
    )]
    pub initial: Option<Vec<String>>,
    /// JSON document {"coeffs": [...], "initial": [...]}; `-` reads standard input.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["coeffs", "initial"])]
    pub spec: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms.
    Gen {
        #[command(flatten)]
        input: SpecArgs,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Scan the Dold and sign conditions.
    Check {
        #[command(flatten)]
        input: SpecArgs,
    },
    /// Bound the fail factor from both sides.
    Fail {
        #[command(flatten)]
        input: SpecArgs,
        /// Externally known multiple of the fail factor, optionally labelled.
        #[arg(long = "known-bound", value_name = "VALUE[:LABEL]")]
        known: Vec<String>,
    },
    /// Structure verdict and bound-table row.
    Classify {
        #[command(flatten)]
        input: SpecArgs,
    },
    /// Analyse the subsequence U_{n^t}.
    Power {
        #[command(flatten)]
        input: SpecArgs,
        #[arg(long, value_name = "T")]
        t: u32,
        #[arg(long = "known-bound", value_name = "VALUE[:LABEL]")]
        known: Vec<String>,
    },
    /// Lower-bound family U_n = (δ+2)U_{n-1} - (δ+1)U_{n-2}.
    Family {
        #[arg(long, value_name = "D")]
        delta: u64,
    },
    /// Search for an unramified prime modulo which the characteristic
    /// polynomial stays irreducible.
    Witness {
        #[command(flatten)]
        input: SpecArgs,
    },
    /// Fraction of primes modulo which a polynomial has a root.
    Density {
        #[command(flatten)]
        input: SpecArgs,
        /// Monic polynomial coefficients, leading term first.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["coeffs", "initial", "spec"])]
        poly: Option<Vec<String>>,
        /// Prime bound for the count.
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    /// Scan a sequence read from a b-file.
    BfileCheck {
        file: PathBuf,
        #[arg(long = "known-bound", value_name = "VALUE[:LABEL]")]
        known: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen { .. } => "gen",
            Command::Check { .. } => "check",
            Command::Fail { .. } => "fail",
            Command::Classify { .. } => "classify",
            Command::Power { .. } => "power",
            Command::Family { .. } => "family",
            Command::Witness { .. } => "witness",
            Command::Density { .. } => "density",
            Command::BfileCheck { .. } => "bfile-check",
        }
    }
}
