//! netdim: influential-node analysis on undirected graphs.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "netdim",
    version,
    about = "Rank influential graph nodes by information dimensionality and classic measures",
    after_help = "Every stochastic command is reproducible: identical inputs, \
                  flags and --seed give byte-identical output."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Whole-graph summary statistics
    Stats(CommonArgs),
    /// Rank nodes by one or more measures
    Rank(CommonArgs),
    /// Time each measure's own work (single worker, distances precomputed)
    Bench(CommonArgs),
    /// Averaged infected-count curve from a seed set
    Si(CommonArgs),
    /// Per-node spreading ability at the observation step
    Ability(CommonArgs),
    /// Kendall tau between measures and simulated spreading across rates
    Kendall(CommonArgs),
    /// Per-node table: information dimension, comparison measure, ability
    Scatter(CommonArgs),
}

/// Flags shared by all subcommands; each command validates what it uses.
#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Input graph file
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Input format: auto, edgelist or pajek
    #[arg(long)]
    format: Option<String>,

    /// Analyze only the largest connected component
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    largest_component: Option<bool>,

    /// Comma-separated measures: DC, BC, CC, EC, LD, LID or all
    #[arg(long)]
    measures: Option<String>,

    /// Keep only the top k ranked nodes
    #[arg(long)]
    k: Option<usize>,

    /// Infection rate: one value, a comma list, or start:stop:step
    #[arg(long)]
    lambda: Option<String>,

    /// Infection exponent, sets lambda = 0.5^beta
    #[arg(long, conflicts_with = "lambda")]
    beta: Option<f64>,

    /// Spreading horizon in steps
    #[arg(long)]
    steps: Option<usize>,

    /// Ensemble size per curve or per node
    #[arg(long)]
    runs: Option<usize>,

    /// Observation step for spreading ability
    #[arg(long)]
    t_obs: Option<usize>,

    /// Master RNG seed (falls back to NETDIM_SEED, then 42)
    #[arg(long)]
    seed: Option<u64>,

    /// Comma-separated seed node labels for si
    #[arg(long)]
    seeds: Option<String>,

    /// Comparison measure for scatter: DC or LD
    #[arg(long)]
    comparison: Option<String>,

    /// Write the result here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Output format: csv or json
    #[arg(long)]
    out_format: Option<String>,

    /// Worker thread cap (0 or absent: all cores; bench always uses one)
    #[arg(long)]
    workers: Option<usize>,

    /// Read defaults from a key = value file; flags win
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

fn run() -> netdim::Result<()> {
    let cli = Cli::parse();
    let (args, body): (&CommonArgs, fn(&config::Settings) -> netdim::Result<String>) =
        match &cli.command {
            Command::Stats(a) => (a, commands::stats),
            Command::Rank(a) => (a, commands::rank_cmd),
            Command::Bench(a) => (a, commands::bench),
            Command::Si(a) => (a, commands::si),
            Command::Ability(a) => (a, commands::ability),
            Command::Kendall(a) => (a, commands::kendall),
            Command::Scatter(a) => (a, commands::scatter),
        };
    let settings = config::resolve(args)?;
    let rendered = match settings.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| netdim::Error::InvalidParameter(format!("thread pool: {e}")))?;
            pool.install(|| body(&settings))?
        }
        None => body(&settings)?,
    };
    output::emit(settings.output.as_deref(), &rendered)
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
