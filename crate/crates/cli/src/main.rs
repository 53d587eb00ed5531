// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coretruss::interplay::{EdgeMeasure, VertexMeasure};

mod commands;

/// Default seed for every randomized subcommand.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Parser, Debug)]
#[command(
    name = "coretruss",
    version,
    about = "Core and truss decomposition toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Edge list to read.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Line prefix marking a comment; repeatable. Defaults to `#` and `%`.
    #[arg(long = "comment-prefix", global = true)]
    pub comment_prefix: Vec<String>,

    /// Field separator for the edge list; whitespace when omitted.
    #[arg(long, global = true)]
    pub delimiter: Option<char>,

    /// Run every stage on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Vertex and edge counts with core and truss degeneracy.
    Stats,
    /// Per-vertex core numbers or per-edge truss numbers.
    Decompose {
        #[arg(long, value_enum, default_value_t = Kind::Core)]
        kind: Kind,
    },
    /// Vertex interplay table.
    Vi(MeasureArgs),
    /// Edge interplay table.
    Ei(MeasureArgs),
    /// Random graph from a null model.
    Generate(GenerateArgs),
    /// Outlier report.
    Anomaly(AnomalyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Core,
    Truss,
}

#[derive(Args, Debug)]
pub struct MeasureArgs {
    /// core or degree
    #[arg(long, default_value = "core")]
    pub vertex_measure: VertexMeasure,
    /// truss or triangles
    #[arg(long, default_value = "truss")]
    pub edge_measure: EdgeMeasure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Er,
    Config,
    Bter,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<u64>,
    /// Graph whose degree sequence and clustering the model follows.
    #[arg(long)]
    pub reference: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnomalyArgs {
    /// Fixed cluster count; chosen by the elbow rule when omitted.
    #[arg(long)]
    pub clusters: Option<usize>,
    #[arg(long, default_value_t = 30)]
    pub kmax: usize,
    #[arg(long, default_value_t = 0.25)]
    pub threshold_fraction: f64,
    #[arg(long, default_value_t = 2.0)]
    pub z_cutoff: f64,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error());
            ExitCode::from(failure.exit_code())
        }
    }
}
