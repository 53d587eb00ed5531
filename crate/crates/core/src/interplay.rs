// SPDX-License-Identifier: Apache-2.0

//! Vertex interplay (VI) and edge interplay (EI) tables.
//!
//! A VI table groups non-isolated vertices by a vertex measure (core number or
//! degree) and summarizes, per group, the minimum and the maximum of an edge
//! measure (truss number or triangle support) over each vertex's incident
//! edges. An EI table groups edges by the unordered pair of their endpoints'
//! vertex measures and averages the edge measure.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::decomposition::{CoreResult, TrussResult};
use crate::error::Error;
use crate::graph::Graph;
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexMeasure {
    #[default]
    Core,
    Degree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeMeasure {
    #[default]
    Truss,
    Triangles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MeasureSelection {
    pub vertex: VertexMeasure,
    pub edge: EdgeMeasure,
}

impl MeasureSelection {
    pub fn new(vertex: VertexMeasure, edge: EdgeMeasure) -> Self {
        MeasureSelection { vertex, edge }
    }
}

impl FromStr for VertexMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "core" => Ok(VertexMeasure::Core),
            "degree" => Ok(VertexMeasure::Degree),
            _ => Err(Error::param(format!("unknown vertex measure `{s}`"))),
        }
    }
}

impl FromStr for EdgeMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "truss" => Ok(EdgeMeasure::Truss),
            "triangles" | "triangle_support" => Ok(EdgeMeasure::Triangles),
            _ => Err(Error::param(format!("unknown edge measure `{s}`"))),
        }
    }
}

impl fmt::Display for VertexMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexMeasure::Core => "core",
            VertexMeasure::Degree => "degree",
        })
    }
}

impl fmt::Display for EdgeMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeMeasure::Truss => "truss",
            EdgeMeasure::Triangles => "triangles",
        })
    }
}

/// One VI row. Field names match the CSV header
/// `value,population,min_mean,min_q1,min_q3,max_mean,max_q1,max_q3`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViRow {
    pub value: u32,
    pub population: usize,
    pub min_mean: f64,
    pub min_q1: f64,
    pub min_q3: f64,
    pub max_mean: f64,
    pub max_q1: f64,
    pub max_q3: f64,
}

/// One EI cell; CSV header `value_lo,value_hi,population,mean`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EiCell {
    pub value_lo: u32,
    pub value_hi: u32,
    pub population: usize,
    pub mean: f64,
}

fn vertex_values(g: &Graph, core: &CoreResult, measure: VertexMeasure) -> Vec<u32> {
    match measure {
        VertexMeasure::Core => core.core_numbers.clone(),
        VertexMeasure::Degree => g.degrees().into_iter().map(|d| d as u32).collect(),
    }
}

fn edge_values(truss: &TrussResult, measure: EdgeMeasure) -> &[u32] {
    match measure {
        EdgeMeasure::Truss => &truss.truss_numbers,
        EdgeMeasure::Triangles => &truss.triangle_support,
    }
}

/// Quantile of sorted data with linear interpolation between order
/// statistics at rank `p * (n - 1)`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let rank = p * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    let frac = rank - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Per-vertex `(min, max)` of the edge measure over incident edges, `None`
/// for isolated vertices.
pub fn incident_extremes(
    g: &Graph,
    truss: &TrussResult,
    measure: EdgeMeasure,
    exec: Execution,
) -> Vec<Option<(u32, u32)>> {
    let values = edge_values(truss, measure);
    par::map_indices(exec, g.num_vertices(), |u| {
        let incident = g.incident_edges(u as u32);
        let first = values[*incident.first()? as usize];
        Some(incident.iter().fold((first, first), |(lo, hi), &e| {
            let x = values[e as usize];
            (lo.min(x), hi.max(x))
        }))
    })
}

pub fn vi_table(
    g: &Graph,
    core: &CoreResult,
    truss: &TrussResult,
    sel: MeasureSelection,
) -> Vec<ViRow> {
    vi_table_with(g, core, truss, sel, Execution::default())
}

pub fn vi_table_with(
    g: &Graph,
    core: &CoreResult,
    truss: &TrussResult,
    sel: MeasureSelection,
    exec: Execution,
) -> Vec<ViRow> {
    let keys = vertex_values(g, core, sel.vertex);
    let extremes = incident_extremes(g, truss, sel.edge, exec);

    let mut classes: BTreeMap<u32, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for (u, ext) in extremes.into_iter().enumerate() {
        if let Some((lo, hi)) = ext {
            let class = classes.entry(keys[u]).or_default();
            class.0.push(lo as f64);
            class.1.push(hi as f64);
        }
    }

    classes
        .into_iter()
        .map(|(value, (mut mins, mut maxs))| {
            mins.sort_by(f64::total_cmp);
            maxs.sort_by(f64::total_cmp);
            ViRow {
                value,
                population: mins.len(),
                min_mean: mean(&mins),
                min_q1: quantile_sorted(&mins, 0.25),
                min_q3: quantile_sorted(&mins, 0.75),
                max_mean: mean(&maxs),
                max_q1: quantile_sorted(&maxs, 0.25),
                max_q3: quantile_sorted(&maxs, 0.75),
            }
        })
        .collect()
}

pub fn ei_table(
    g: &Graph,
    core: &CoreResult,
    truss: &TrussResult,
    sel: MeasureSelection,
) -> Vec<EiCell> {
    let keys = vertex_values(g, core, sel.vertex);
    let values = edge_values(truss, sel.edge);
    // sums are exact in u64, so the mean does not depend on edge order
    let mut cells: BTreeMap<(u32, u32), (usize, u64)> = BTreeMap::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let a = keys[edge.u() as usize];
        let b = keys[edge.v() as usize];
        let cell = cells.entry((a.min(b), a.max(b))).or_default();
        cell.0 += 1;
        cell.1 += values[e] as u64;
    }
    cells
        .into_iter()
        .map(|((value_lo, value_hi), (population, sum))| EiCell {
            value_lo,
            value_hi,
            population,
            mean: sum as f64 / population as f64,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{core_decompose, truss_decompose};

    fn tables(g: &Graph) -> (Vec<ViRow>, Vec<EiCell>) {
        let core = core_decompose(g);
        let truss = truss_decompose(g);
        let sel = MeasureSelection::default();
        (
            vi_table(g, &core, &truss, sel),
            ei_table(g, &core, &truss, sel),
        )
    }

    #[test]
    fn quartiles_interpolate() {
        let data = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_sorted(&data, 0.25), 1.75);
        assert_eq!(quantile_sorted(&data, 0.75), 3.25);
        assert_eq!(quantile_sorted(&[5.0], 0.25), 5.0);
        assert_eq!(quantile_sorted(&[0.0, 10.0], 0.5), 5.0);
    }

    #[test]
    fn triangle_tables() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let (vi, ei) = tables(&g);
        assert_eq!(vi.len(), 1);
        assert_eq!((vi[0].value, vi[0].population), (2, 3));
        assert_eq!(vi[0].min_mean, 1.0);
        assert_eq!(
            ei,
            vec![EiCell {
                value_lo: 2,
                value_hi: 2,
                population: 3,
                mean: 1.0
            }]
        );
    }

    #[test]
    fn star_tables() {
        let g = Graph::from_edges(6, (1..6).map(|i| (0, i)));
        let (vi, ei) = tables(&g);
        assert_eq!(vi.len(), 1);
        assert_eq!(vi[0].value, 1);
        assert_eq!(vi[0].population, 6);
        assert_eq!((vi[0].min_mean, vi[0].max_mean), (0.0, 0.0));
        assert_eq!(ei.len(), 1);
        assert_eq!(ei[0].mean, 0.0);
    }

    #[test]
    fn edgeless_graph_gives_empty_tables() {
        let g = Graph::from_edges(4, []);
        let (vi, ei) = tables(&g);
        assert!(vi.is_empty());
        assert!(ei.is_empty());
    }

    #[test]
    fn degree_measure_keys_by_degree() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)]);
        let core = core_decompose(&g);
        let truss = truss_decompose(&g);
        let sel = MeasureSelection::new(VertexMeasure::Degree, EdgeMeasure::Triangles);
        let vi = vi_table(&g, &core, &truss, sel);
        let values: Vec<u32> = vi.iter().map(|r| r.value).collect();
        assert_eq!(values, vec![1, 2, 3]);
        let ei = ei_table(&g, &core, &truss, sel);
        let keys: Vec<(u32, u32)> = ei.iter().map(|c| (c.value_lo, c.value_hi)).collect();
        assert_eq!(keys, vec![(1, 3), (2, 2), (2, 3)]);
    }

    #[test]
    fn parse_measures() {
        assert_eq!(
            "core".parse::<VertexMeasure>().unwrap(),
            VertexMeasure::Core
        );
        assert_eq!(
            "triangles".parse::<EdgeMeasure>().unwrap(),
            EdgeMeasure::Triangles
        );
        assert!("betweenness".parse::<VertexMeasure>().is_err());
    }
}
