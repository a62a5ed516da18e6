//! `parastacks`: permutations from two parallel stacks, their series and
//! the checks around them.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use render::Format;

#[derive(Parser, Debug)]
#[command(name = "parastacks", version, about = "Permutations sortable by two parallel stacks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for scans and enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Leave wall times out of JSON output.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Runs an operation word and prints the permutation it outputs.
    Execute {
        /// Walk letters (ENWS) or operations (I1 I2 O1 O2).
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
    },
    /// Tells whether a permutation is achievable and prints its canonical word.
    Sortable {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        perm: Vec<String>,
    },
    /// Prints the canonical word of an achievable permutation.
    Canonical {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        perm: Vec<String>,
    },
    /// Rewrites an operation word into the canonical word for the same permutation.
    Canonicalize {
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
    },
    /// Computes a generating function to a given order.
    Series(SeriesArgs),
    /// Runs a brute-force enumeration.
    Oracle(OracleArgs),
    /// Runs a conjecture, identity or counterexample check.
    Check(CheckArgs),
    /// Numeric estimates: t_c bracket, radius scan, growth bounds.
    Estimate(EstimateArgs),
    /// Applies the corner involution to a walk.
    Involution {
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    S,
    Sprim,
    Stilde,
    C,
    Q,
    Qprim,
    W00,
    H00,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SRoute {
    /// `S = 1/(1 - S•)` with `S•` from `Q`.
    Sprim,
    /// `S = 1 + C(1 - 1/S, t S^2)`.
    C,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    pub which: SeriesName,
    /// Truncation order (bidegree for w00 and h00).
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Evaluate the corner variable at a rational "p/q".
    #[arg(long)]
    pub at: Option<String>,
    /// Keep `s` marking E steps in q and qprim.
    #[arg(long)]
    pub refine_s: bool,
    /// Equation used for s.
    #[arg(long, value_enum, default_value_t = SRoute::Sprim)]
    pub route: SRoute,
    /// Run the oracle or residual check and refuse to emit on mismatch.
    #[arg(long)]
    pub verify: bool,
    /// Largest size for brute-force cross-checks under --verify.
    #[arg(long, default_value_t = 6)]
    pub brute_bound: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleName {
    /// Achievable permutations by the Even-Itai test over all n!.
    Perms,
    /// Quarter plane loops by corner count.
    Loops,
    /// Connected standard arch systems by left-right pairs.
    Connected,
    /// Standard operation words.
    Standard,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    pub which: OracleName,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Refuse sizes above this bound.
    #[arg(long, default_value_t = 10)]
    pub brute_bound: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Positivity,
    Inversion,
    #[value(name = "appendixB")]
    AppendixB,
    P1,
    P2,
    Counterexamples,
    Prop4,
    ConstantTerm,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub which: CheckName,
    /// Order; each check has its own default.
    #[arg(long)]
    pub n: Option<usize>,
    /// Series for the positivity check: q, q-refined, q-primitive, w00,
    /// h00 or fixed:<NS word>.
    #[arg(long, default_value = "q")]
    pub series: String,
    #[arg(long, default_value_t = 4)]
    pub i_max: usize,
    #[arg(long, default_value_t = 4)]
    pub j_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimateName {
    Tc,
    Radius,
    Bounds,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    pub which: EstimateName,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Width of the reported a interval for tc.
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    /// Comma separated rational values of a for radius.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Comma separated orders for radius.
    #[arg(long)]
    pub orders: Option<String>,
}

/// Why a run stopped early.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments; exit code 2.
    Usage(String),
    /// A computation or check failed; exit code 1.
    Contract(String),
}

impl From<parastacks_core::Error> for Failure {
    fn from(e: parastacks_core::Error) -> Self {
        use parastacks_core::Error as E;
        match e {
            E::Parse(_) | E::InvalidInput(_) | E::InvalidWord { .. } | E::OverBound { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Contract(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match commands::run(&cli) {
        Ok(out) => {
            if let Err(e) = render::emit(&out.render(cli.global.format), cli.global.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: check failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Contract(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
