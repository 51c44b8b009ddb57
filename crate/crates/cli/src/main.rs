//! `bouquet`: bouquet decompositions, toric bases and Lawrence tests from the command line.

mod commands;
mod construct;
mod input;
mod oracle;
mod search;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bouquet_core::limits::{DEFAULT_GRAVER_CAP, DEFAULT_MINOR_CAP};
use bouquet_core::{Error, FiberCap, Limits};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "bouquet",
    version,
    about = "Bouquet decompositions of integer matrices and their toric bases"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for internal parallelism (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Largest Graver basis computed before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_GRAVER_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cap_graver: u64,
    /// Absolute per-coordinate bound for fiber searches (default: 10 times the input norm).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_fiber: Option<u64>,
    /// Largest number of maximal minors enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MINOR_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cap_minors: u64,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// One-based column indices S for the S-Lawrence test, comma separated.
    #[arg(long, global = true)]
    set: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Bouquets with their encoding vectors, and the bouquet matrix A_B.
    Bouquets { matrix: PathBuf },
    /// Graver basis.
    Graver { matrix: PathBuf },
    /// Circuits.
    Circuits { matrix: PathBuf },
    /// A minimal Markov basis (positively graded input).
    Markov { matrix: PathBuf },
    /// Indispensable binomials (positively graded input).
    Indispensable { matrix: PathBuf },
    /// Nonnegative points of the fiber of x.
    Fiber {
        matrix: PathBuf,
        /// Base point, e.g. 1,0,2.
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Stability, grading, Lawrence conditions, genericity and unimodularity.
    Classify { matrix: PathBuf },
    /// Lift a kernel vector of A_B to the kernel of A.
    Lift {
        matrix: PathBuf,
        #[arg(allow_hyphen_values = true)]
        vector: String,
        /// Subbouquet blocks to use instead of the bouquets, e.g. "1,6;2,5;3,4;7".
        #[arg(long)]
        parts: Option<String>,
    },
    /// Project a kernel vector of A to the kernel of A_B.
    Unlift {
        matrix: PathBuf,
        #[arg(allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        parts: Option<String>,
    },
    /// Incidence matrix of a hypergraph file.
    Incidence { hypergraph: PathBuf },
    /// Blue and red edges of the walk of an edge vector, and whether it is balanced.
    Walk {
        hypergraph: PathBuf,
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Encoding vectors of the bouquet with basis U (one-based vertices, comma separated).
    Basis {
        hypergraph: PathBuf,
        vertices: String,
    },
    /// Build matrices and hypergraphs with prescribed bouquets.
    #[command(subcommand)]
    Construct(construct::Construct),
    /// Cross-check the exact algorithms against bounded enumeration.
    Oracle {
        matrix: PathBuf,
        /// Coordinate bound for the kernel bijection check.
        #[arg(long, default_value_t = 2)]
        bound: u64,
    },
    /// Random search for a positively graded matrix without mixed bouquets whose Graver basis
    /// consists of indispensable elements.
    SearchOpenQ4(search::SearchArgs),
}

/// What a subcommand produced: the same data as text and as JSON.
pub struct Report {
    pub text: String,
    pub json: Value,
    /// Set when a result is incomplete; the command exits with status 2.
    pub inconclusive: Option<String>,
    /// Set when a check failed; the command exits with status 1.
    pub failed: Option<String>,
}

impl Report {
    pub fn new(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            inconclusive: None,
            failed: None,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Error(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconclusive(reason) => Failure::Inconclusive(reason),
            e => Failure::Error(e.to_string()),
        }
    }
}

/// Settings shared by all subcommands.
pub struct Context {
    pub limits: Limits,
    pub seed: u64,
    pub set: Option<Vec<usize>>,
}

fn context(g: &Global) -> Result<Context, Failure> {
    let limits = Limits {
        graver_cap: usize::try_from(g.cap_graver).unwrap_or(usize::MAX),
        fiber_cap: g.cap_fiber.map_or(FiberCap::Scaled(10), |c| {
            FiberCap::Absolute(BigInt::from(c))
        }),
        minor_cap: u128::from(g.cap_minors),
        ..Limits::default()
    };
    let set = g.set.as_deref().map(input::index_list).transpose()?;
    Ok(Context {
        limits,
        seed: g.seed,
        set,
    })
}

fn run(cli: Cli) -> Result<Report, Failure> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(usize::try_from(n).unwrap_or(usize::MAX))
            .build_global()
            .map_err(|e| Failure::Error(format!("thread pool: {e}")))?;
    }
    let ctx = context(&cli.global)?;
    match cli.command {
        Command::Bouquets { matrix } => commands::bouquets(&input::matrix_file(&matrix)?),
        Command::Graver { matrix } => commands::graver(&ctx, &input::matrix_file(&matrix)?),
        Command::Circuits { matrix } => commands::circuits(&ctx, &input::matrix_file(&matrix)?),
        Command::Markov { matrix } => commands::markov(&ctx, &input::matrix_file(&matrix)?),
        Command::Indispensable { matrix } => {
            commands::indispensable(&ctx, &input::matrix_file(&matrix)?)
        }
        Command::Fiber { matrix, x } => {
            commands::fiber(&ctx, &input::matrix_file(&matrix)?, &input::vector(&x)?)
        }
        Command::Classify { matrix } => commands::classify(&ctx, &input::matrix_file(&matrix)?),
        Command::Lift {
            matrix,
            vector,
            parts,
        } => {
            let parts = parts.as_deref().map(input::blocks).transpose()?;
            commands::lift(
                &input::matrix_file(&matrix)?,
                parts.as_deref(),
                &input::vector(&vector)?,
                true,
            )
        }
        Command::Unlift {
            matrix,
            vector,
            parts,
        } => {
            let parts = parts.as_deref().map(input::blocks).transpose()?;
            commands::lift(
                &input::matrix_file(&matrix)?,
                parts.as_deref(),
                &input::vector(&vector)?,
                false,
            )
        }
        Command::Incidence { hypergraph } => {
            commands::incidence(&input::hypergraph_file(&hypergraph)?)
        }
        Command::Walk { hypergraph, vector } => commands::walk(
            &input::hypergraph_file(&hypergraph)?,
            &input::vector(&vector)?,
        ),
        Command::Basis {
            hypergraph,
            vertices,
        } => commands::basis(
            &input::hypergraph_file(&hypergraph)?,
            &input::index_list(&vertices)?,
        ),
        Command::Construct(c) => construct::run(c),
        Command::Oracle { matrix, bound } => {
            oracle::run(&ctx, &input::matrix_file(&matrix)?, bound)
        }
        Command::SearchOpenQ4(args) => search::run(&ctx, &args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    match run(cli) {
        Ok(report) => {
            let body = match format {
                Format::Text => report.text,
                Format::Json => {
                    let mut json = report.json;
                    if let (Some(reason), Value::Object(map)) = (&report.inconclusive, &mut json) {
                        map.insert("inconclusive".into(), Value::String(reason.clone()));
                    }
                    serde_json::to_string_pretty(&json).expect("reports serialize") + "\n"
                }
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().write_all(body.as_bytes());
            if let Some(reason) = report.failed {
                eprintln!("error: {reason}");
                ExitCode::from(1)
            } else if let Some(reason) = report.inconclusive {
                eprintln!("inconclusive: {reason}");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Inconclusive(reason)) => {
            if format == Format::Json {
                println!("{}", serde_json::json!({ "inconclusive": reason }));
            }
            eprintln!("inconclusive: {reason}");
            ExitCode::from(2)
        }
        Err(Failure::Error(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
