mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hlbc::alcove::DEFAULT_MAX_PAIRS;

/// Hall-Littlewood polynomials of types B and C.
#[derive(Parser, Debug)]
#[command(name = "hlbc", version)]
pub struct Cli {
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true, env = "HLBC_THREADS")]
    threads: Option<usize>,
    /// Abort when an enumeration exceeds this many admissible pairs.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PAIRS)]
    max_pairs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute P_λ(x;t).
    Compute {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, value_enum, default_value_t = Method::Tableau)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write every admissible pair as a JSON line to this file.
        #[arg(long, value_name = "PATH")]
        emit_pairs: Option<std::path::PathBuf>,
        /// Write every filling as a JSON line to this file.
        #[arg(long, value_name = "PATH")]
        emit_fillings: Option<std::path::PathBuf>,
    },
    /// Run consistency checks on one weight or on the built-in catalogue.
    Verify {
        #[command(flatten)]
        weight: OptionalWeightArgs,
        /// Comma-separated subset of chain,fibers,weight,character,hhl,identities.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "chain,fibers,weight,character,hhl,identities"
        )]
        checks: Vec<Check>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count the fillings with N = 0 and compare with the dimension.
    Kn {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the fillings with N = 0 as JSON lines to this file.
        #[arg(long, value_name = "PATH")]
        emit_fillings: Option<std::path::PathBuf>,
    },
    /// Print the λ-chain, one root per line.
    DumpChain {
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// List the fibers of the filling map with their sums.
    Fibers {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Instead, collect the pairs whose compressed filling is this
        /// JSON array of columns.
        #[arg(long, value_name = "JSON")]
        compressed: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct WeightArgs {
    #[arg(short = 't', long = "type", value_enum)]
    pub cartan: TypeArg,
    #[arg(short = 'n', long)]
    pub n: usize,
    /// Partition λ for type C, μ for type B, e.g. 2,1.
    #[arg(
        short = 'l',
        long,
        value_delimiter = ',',
        conflicts_with = "alpha",
        required_unless_present = "alpha"
    )]
    pub lambda: Option<Vec<usize>>,
    /// Fundamental-weight coefficients α₁,…,α_n.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<usize>>,
}

#[derive(Args, Debug, Clone)]
pub struct OptionalWeightArgs {
    #[arg(
        short = 't',
        long = "type",
        value_enum,
        required_unless_present = "builtin"
    )]
    pub cartan: Option<TypeArg>,
    #[arg(short = 'n', long, required_unless_present = "builtin")]
    pub n: Option<usize>,
    #[arg(short = 'l', long, value_delimiter = ',', conflicts_with = "alpha")]
    pub lambda: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<usize>>,
    /// Check every built-in weight.
    #[arg(long, conflicts_with_all = ["cartan", "n", "lambda", "alpha"])]
    pub builtin: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeArg {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Tableau,
    Alcove,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Chain,
    Fibers,
    Weight,
    Character,
    Hhl,
    Identities,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command, cli.max_pairs) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
