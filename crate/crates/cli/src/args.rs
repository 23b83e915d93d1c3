use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Incremental topological ordering and strong-component maintenance.
#[derive(Debug, Parser)]
#[command(name = "incr-topo", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Insert the arcs of a workload and report counters.
    Run {
        #[command(flatten)]
        run: RunArgs,
        /// Cross-check against the static oracle every N insertions (0 = off).
        #[arg(long, default_value_t = 0)]
        check_every: usize,
    },
    /// Like `run`, checking against the static oracle after every insertion.
    Verify {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a workload repeatedly and report median time and traversal totals.
    Bench {
        #[command(flatten)]
        run: RunArgs,
        /// Number of repetitions.
        #[arg(long, short = 'r', default_value_t = 5)]
        reps: usize,
    },
    /// Write a generated workload.
    Gen {
        family: Family,
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "m")]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Lb,
    RandomDag,
    RandomDigraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Topo,
    Scc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Median,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Workload file; stdin if absent or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Topo)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = StrategyArg::Median)]
    pub strategy: StrategyArg,
    /// Approximation factor for the median strategy, in (0, 1/2].
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Seed for the random strategy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Report file (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
