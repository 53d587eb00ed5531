// SPDX-License-Identifier: Apache-2.0

//! Whole-graph summaries.

use serde::Serialize;

use crate::decomposition::{core_decompose, truss_decompose, CoreResult, TrussResult};
use crate::graph::Graph;

/// Vertex and edge counts with both degeneracies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    #[serde(rename = "V")]
    pub vertices: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    pub core_degen: u32,
    pub truss_degen: u32,
}

impl GraphSummary {
    pub fn from_results(g: &Graph, core: &CoreResult, truss: &TrussResult) -> Self {
        GraphSummary {
            vertices: g.num_vertices(),
            edges: g.num_edges(),
            core_degen: core.core_degeneracy,
            truss_degen: truss.truss_degeneracy,
        }
    }
}

pub fn summarize(g: &Graph) -> GraphSummary {
    GraphSummary::from_results(g, &core_decompose(g), &truss_decompose(g))
}

/// Number of vertices with core number `core` whose largest incident truss
/// number is `max_truss`.
pub fn count_core_with_max_truss(
    g: &Graph,
    core: &CoreResult,
    truss: &TrussResult,
    core_value: u32,
    max_truss: u32,
) -> usize {
    g.vertices()
        .filter(|&u| core.core_numbers[u as usize] == core_value)
        .filter(|&u| truss.max_adjacent(g, u) == Some(max_truss))
        .count()
}
