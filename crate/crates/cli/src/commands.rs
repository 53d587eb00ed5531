// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::anyhow;
use serde::Serialize;

use coretruss::anomaly::{core_truss_dd_with, AnomalyOptions};
use coretruss::decomposition::{core_decompose, truss_decompose_with};
use coretruss::graph::{load_edge_list, write_edge_list};
use coretruss::interplay::{ei_table, vi_table_with, MeasureSelection};
use coretruss::randgen::{extract_reference_stats, generate, GeneratorSpec, NullModel};
use coretruss::stats::GraphSummary;
use coretruss::{Execution, Graph, LoadOptions};

use crate::{
    AnomalyArgs, Cli, Command, Format, GenerateArgs, GlobalArgs, Kind, MeasureArgs, Model,
};

/// A failed run: bad usage exits with 2, anything else with 1.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Compute(anyhow::Error),
}

impl Failure {
    pub fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Usage(e) | Failure::Compute(e) => e,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Compute(_) => 1,
        }
    }
}

impl From<coretruss::Error> for Failure {
    fn from(e: coretruss::Error) -> Self {
        match e {
            coretruss::Error::InvalidParameter(_) => Failure::Usage(e.into()),
            other => Failure::Compute(other.into()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(e.into())
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(anyhow!(message.into()))
}

type Outcome = Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Stats => stats(g),
        Command::Decompose { kind } => decompose(g, *kind),
        Command::Vi(args) => vi(g, args),
        Command::Ei(args) => ei(g, args),
        Command::Generate(args) => generate_graph(g, args),
        Command::Anomaly(args) => anomaly(g, args),
    }
}

fn execution(g: &GlobalArgs) -> Execution {
    if g.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn load_options(g: &GlobalArgs) -> LoadOptions {
    let mut options = LoadOptions::default();
    if !g.comment_prefix.is_empty() {
        options.comment_prefixes = g.comment_prefix.clone();
    }
    options.delimiter = g.delimiter;
    options
}

fn load_graph(path: &Path, g: &GlobalArgs) -> Result<Graph, Failure> {
    let file =
        File::open(path).map_err(|e| usage(format!("cannot open {}: {e}", path.display())))?;
    load_edge_list(BufReader::new(file), &load_options(g))
        .map_err(|e| Failure::Compute(anyhow::Error::new(e).context(path.display().to_string())))
}

fn load_input(g: &GlobalArgs) -> Result<Graph, Failure> {
    let path = g
        .input
        .as_deref()
        .ok_or_else(|| usage("--input is required for this subcommand"))?;
    load_graph(path, g)
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| usage(format!("cannot create {}: {e}", path.display())))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_rows<T: Serialize>(g: &GlobalArgs, format: Format, rows: &[T]) -> Outcome {
    let mut out = open_output(g.out.as_deref())?;
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(&mut out);
            for row in rows {
                writer
                    .serialize(row)
                    .map_err(|e| Failure::Compute(e.into()))?;
            }
            writer.flush()?;
        }
        Format::Json => emit_json(&mut out, rows)?,
    }
    out.flush()?;
    Ok(())
}

fn emit_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure::Compute(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn stats(g: &GlobalArgs) -> Outcome {
    let graph = load_input(g)?;
    let core = core_decompose(&graph);
    let truss = truss_decompose_with(&graph, execution(g));
    let summary = GraphSummary::from_results(&graph, &core, &truss);
    match g.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut out = open_output(g.out.as_deref())?;
            emit_json(&mut out, &summary)?;
            out.flush()?;
            Ok(())
        }
        Format::Csv => emit_rows(g, Format::Csv, &[summary]),
    }
}

#[derive(Serialize)]
struct CoreRow<'a> {
    vertex_label: &'a str,
    core: u32,
}

#[derive(Serialize)]
struct TrussRow<'a> {
    label_u: &'a str,
    label_v: &'a str,
    truss: u32,
    support: u32,
}

fn decompose(g: &GlobalArgs, kind: Kind) -> Outcome {
    let graph = load_input(g)?;
    let format = g.format.unwrap_or(Format::Csv);
    match kind {
        Kind::Core => {
            let core = core_decompose(&graph);
            let rows: Vec<CoreRow> = graph
                .vertices()
                .map(|u| CoreRow {
                    vertex_label: graph.label(u),
                    core: core.core_numbers[u as usize],
                })
                .collect();
            emit_rows(g, format, &rows)
        }
        Kind::Truss => {
            let truss = truss_decompose_with(&graph, execution(g));
            let rows: Vec<TrussRow> = graph
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| TrussRow {
                    label_u: graph.label(e.u()),
                    label_v: graph.label(e.v()),
                    truss: truss.truss_numbers[i],
                    support: truss.triangle_support[i],
                })
                .collect();
            emit_rows(g, format, &rows)
        }
    }
}

fn selection(args: &MeasureArgs) -> MeasureSelection {
    MeasureSelection::new(args.vertex_measure, args.edge_measure)
}

fn vi(g: &GlobalArgs, args: &MeasureArgs) -> Outcome {
    let graph = load_input(g)?;
    let exec = execution(g);
    let core = core_decompose(&graph);
    let truss = truss_decompose_with(&graph, exec);
    let rows = vi_table_with(&graph, &core, &truss, selection(args), exec);
    emit_rows(g, g.format.unwrap_or(Format::Csv), &rows)
}

fn ei(g: &GlobalArgs, args: &MeasureArgs) -> Outcome {
    let graph = load_input(g)?;
    let core = core_decompose(&graph);
    let truss = truss_decompose_with(&graph, execution(g));
    let cells = ei_table(&graph, &core, &truss, selection(args));
    emit_rows(g, g.format.unwrap_or(Format::Csv), &cells)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".labels");
    PathBuf::from(name)
}

fn generate_graph(g: &GlobalArgs, args: &GenerateArgs) -> Outcome {
    if g.format.is_some() {
        return Err(usage(
            "generate writes an edge list; --format does not apply",
        ));
    }
    if g.input.is_some() {
        return Err(usage("generate takes its reference graph from --reference"));
    }
    let reference = args
        .reference
        .as_deref()
        .map(|path| load_graph(path, g))
        .transpose()?;

    let model = match args.model {
        Model::Er => {
            let n = args.n.or(reference.as_ref().map(Graph::num_vertices));
            let m = args.m.or(reference.as_ref().map(|r| r.num_edges() as u64));
            match (n, m) {
                (Some(n), Some(m)) => NullModel::Er { n, m },
                _ => return Err(usage("--model er needs --n and --m, or --reference")),
            }
        }
        Model::Config | Model::Bter => {
            if args.n.is_some() || args.m.is_some() {
                return Err(usage("--n and --m apply only to --model er"));
            }
            let reference = reference
                .as_ref()
                .ok_or_else(|| usage("this model needs --reference"))?;
            let stats = extract_reference_stats(reference);
            if args.model == Model::Config {
                NullModel::Config {
                    degrees: stats.degrees,
                }
            } else {
                NullModel::Bter {
                    degrees: stats.degrees,
                    ccd: stats.ccd,
                }
            }
        }
    };

    let spec = GeneratorSpec::new(model, g.seed);
    spec.validate()?;
    let graph = generate(&spec)?;

    let mut out = open_output(g.out.as_deref())?;
    write_edge_list(&graph, &mut out)?;
    if let Some(path) = g.out.as_deref() {
        // reference-driven models keep the reference's vertex order
        let labels: Vec<&str> = match &reference {
            Some(r) if r.num_vertices() == graph.num_vertices() => {
                r.labels().iter().map(String::as_str).collect()
            }
            _ => graph.labels().iter().map(String::as_str).collect(),
        };
        let sidecar = sidecar_path(path);
        let file = File::create(&sidecar)
            .map_err(|e| usage(format!("cannot create {}: {e}", sidecar.display())))?;
        let mut writer = BufWriter::new(file);
        for (i, label) in labels.iter().enumerate() {
            writeln!(writer, "{i}\t{label}")?;
        }
        writer.flush()?;
    }
    Ok(())
}

fn anomaly(g: &GlobalArgs, args: &AnomalyArgs) -> Outcome {
    if g.format == Some(Format::Csv) {
        return Err(usage(
            "anomaly writes a JSON report; --format csv does not apply",
        ));
    }
    if !(args.z_cutoff.is_finite() && args.z_cutoff >= 0.0) {
        return Err(usage("--z-cutoff must be a nonnegative number"));
    }
    let options = AnomalyOptions {
        seed: g.seed,
        clusters: args.clusters,
        k_max: args.kmax,
        threshold_fraction: args.threshold_fraction,
        z_cutoff: args.z_cutoff,
        ..AnomalyOptions::default()
    };
    let graph = load_input(g)?;
    let exec = execution(g);
    let core = core_decompose(&graph);
    let truss = truss_decompose_with(&graph, exec);
    let report = core_truss_dd_with(&graph, &core, &truss, &options, exec)?;
    let mut out = open_output(g.out.as_deref())?;
    emit_json(&mut out, &report)?;
    out.flush()?;
    Ok(())
}
