//! `qpchar`: compute principally specialized characters, list basis
//! monomials and run the identity checks from the command line.
//!
//! Exit status is 0 when everything requested matched, 1 on a verification
//! mismatch and 2 on usage errors or other failures.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qpchar",
    version,
    about = "Exact sl2-hat characters and quasi-particle bases"
)]
pub struct Cli {
    /// truncation order N (coefficients of q^0 ..= q^N)
    #[arg(long, global = true, default_value_t = 60)]
    pub order: usize,

    /// output format; csv coefficient tables have header `n,coefficient`
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// directory for cached series
    #[arg(long, global = true, env = "QPCHAR_CACHE")]
    pub cache_dir: Option<PathBuf>,

    /// add brute-force cross-checks (and recheck a random cached coefficient)
    #[arg(long, global = true)]
    pub oracle: bool,

    /// report wall-clock times (JSON output is then no longer byte-stable)
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a character
    Char(CharArgs),
    /// List basis monomials up to an exponent
    List(ListArgs),
    /// Run identity checks
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Verma,
    Standard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Product,
    Sum,
    Enumerate,
    All,
}

#[derive(Args, Debug)]
pub struct CharArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[arg(long)]
    pub k0: Option<u32>,
    #[arg(long)]
    pub k1: Option<u32>,
    #[arg(long, value_enum, default_value_t = Method::Product)]
    pub method: Method,
}

#[derive(Args, Debug)]
pub struct ListArgs {
    /// list the Verma module basis
    #[arg(long, conflicts_with_all = ["k0", "k1"])]
    pub verma: bool,
    #[arg(long)]
    pub k0: Option<u32>,
    #[arg(long)]
    pub k1: Option<u32>,
    #[arg(long)]
    pub max_exponent: u64,
    /// largest accepted --max-exponent; listings grow quickly
    #[arg(long, default_value_t = 24)]
    pub limit: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Selector {
    /// Gordon-Andrews-Bressoud product = sum
    Grr,
    /// standard modules: product = sum = enumerated, plus Verma
    Module,
    /// dimensions of the maximal submodule are nonnegative (and pinned)
    Complement,
    /// the closing Andrews identity, modulus 2l+3
    Section8,
    /// bracket antisymmetry and Jacobi identity
    Liealg,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub selector: Selector,
    /// l for grr (with --s and --r) or for section8
    #[arg(long)]
    pub l: Option<u32>,
    /// 0 or 1; the modulus is 2l+s
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    /// weight for module or complement (default: sweep all levels)
    #[arg(long)]
    pub k0: Option<u32>,
    #[arg(long)]
    pub k1: Option<u32>,
    /// highest level swept when no weight is given
    #[arg(long, default_value_t = 7)]
    pub max_level: u32,
    /// index window for the Lie algebra sweeps
    #[arg(long, default_value_t = 8)]
    pub window: i64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qpchar: {e}");
            ExitCode::from(2)
        }
    }
}
