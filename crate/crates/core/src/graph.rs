// SPDX-License-Identifier: Apache-2.0

//! Immutable simple undirected graph in compressed sparse row form, plus
//! edge-list ingestion and the canonical edge-list writer.
//!
//! Vertices are contiguous `u32` ids. Every adjacency list is strictly
//! increasing, and each adjacency slot also records the index of the edge it
//! belongs to, so per-edge arrays (truss numbers, supports) can be addressed
//! straight from a neighbor scan.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Canonical key of an undirected edge: `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeId {
    u: VertexId,
    v: VertexId,
}

impl EdgeId {
    /// Canonicalizes the pair. Panics on a self-loop.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        assert_ne!(a, b, "self-loop has no edge id");
        if a < b {
            EdgeId { u: a, v: b }
        } else {
            EdgeId { u: b, v: a }
        }
    }

    pub fn u(self) -> VertexId {
        self.u
    }

    pub fn v(self) -> VertexId {
        self.v
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    // edge index stored per adjacency slot, parallel to `neighbors`
    slot_edges: Vec<u32>,
    edges: Vec<EdgeId>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph on `num_vertices` vertices labelled `0..n`.
    ///
    /// Self-loops are dropped and duplicate or reversed pairs merged.
    pub fn from_edges<I>(num_vertices: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let labels = (0..num_vertices).map(|i| i.to_string()).collect();
        Self::with_labels(labels, pairs)
    }

    /// Builds a graph whose vertex `i` carries `labels[i]`.
    pub fn with_labels<I>(labels: Vec<String>, pairs: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let n = labels.len();
        let mut edges: Vec<EdgeId> = pairs
            .into_iter()
            .filter(|&(a, b)| a != b)
            .map(|(a, b)| {
                assert!(
                    (a as usize) < n && (b as usize) < n,
                    "edge ({a}, {b}) out of range for {n} vertices"
                );
                EdgeId::new(a, b)
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        assert!(edges.len() < u32::MAX as usize, "too many edges");

        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u as usize] += 1;
            degree[e.v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }

        // Filling in lexicographic edge order leaves every list sorted: all
        // (w, x) with w < x precede every (x, y) with y > x.
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0; offsets[n]];
        let mut slot_edges = vec![0; offsets[n]];
        for (idx, e) in edges.iter().enumerate() {
            let (u, v) = (e.u as usize, e.v as usize);
            neighbors[cursor[u]] = e.v;
            slot_edges[cursor[u]] = idx as u32;
            cursor[u] += 1;
            neighbors[cursor[v]] = e.u;
            slot_edges[cursor[v]] = idx as u32;
            cursor[v] += 1;
        }

        Graph {
            offsets,
            neighbors,
            slot_edges,
            edges,
            labels,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, u: VertexId) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.offsets
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(0)
    }

    /// Sorted neighbor list `N(u)`.
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        let u = u as usize;
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Edge indices aligned with [`Graph::neighbors`].
    pub fn incident_edges(&self, u: VertexId) -> &[u32] {
        let u = u as usize;
        &self.slot_edges[self.offsets[u]..self.offsets[u + 1]]
    }

    /// All edges, sorted lexicographically; position is the edge index.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> EdgeId {
        self.edges[index]
    }

    pub fn edge_index(&self, a: VertexId, b: VertexId) -> Option<usize> {
        if a == b || a as usize >= self.num_vertices() || b as usize >= self.num_vertices() {
            return None;
        }
        let e = EdgeId::new(a, b);
        let slot = self.neighbors(e.u).binary_search(&e.v).ok()?;
        Some(self.incident_edges(e.u)[slot] as usize)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn label(&self, u: VertexId) -> &str {
        &self.labels[u as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as VertexId)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.num_vertices() as VertexId
    }

    /// Checks the structural invariants: symmetry, no self-loops, strictly
    /// increasing adjacency, slot/edge agreement and the handshake identity.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let n = self.num_vertices();
        if self.offsets.len() != n + 1 {
            return Err("offset array length mismatch".into());
        }
        let mut degree_sum = 0;
        for u in self.vertices() {
            let nbrs = self.neighbors(u);
            degree_sum += nbrs.len();
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("N({u}) is not strictly increasing"));
            }
            for (&v, &e) in nbrs.iter().zip(self.incident_edges(u)) {
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if self.neighbors(v).binary_search(&u).is_err() {
                    return Err(format!("{v} in N({u}) but {u} not in N({v})"));
                }
                if self.edges.get(e as usize) != Some(&EdgeId::new(u, v)) {
                    return Err(format!("slot edge index wrong for ({u}, {v})"));
                }
            }
        }
        if degree_sum != 2 * self.num_edges() {
            return Err(format!(
                "degree sum {degree_sum} != 2 * {}",
                self.num_edges()
            ));
        }
        Ok(())
    }
}

/// Keeps the edges accepted by `keep` and the vertices they touch.
///
/// Surviving vertices are renumbered in increasing order of their old id and
/// keep their external labels.
pub fn subgraph_induced_by_edges<F>(g: &Graph, keep: F) -> Graph
where
    F: Fn(EdgeId) -> bool,
{
    let kept: Vec<EdgeId> = g.edges().iter().copied().filter(|&e| keep(e)).collect();
    let mut new_id = vec![u32::MAX; g.num_vertices()];
    for e in &kept {
        new_id[e.u as usize] = 0;
        new_id[e.v as usize] = 0;
    }
    let mut labels = Vec::new();
    for u in g.vertices() {
        if new_id[u as usize] == 0 {
            new_id[u as usize] = labels.len() as u32;
            labels.push(g.label(u).to_string());
        }
    }
    Graph::with_labels(
        labels,
        kept.iter()
            .map(|e| (new_id[e.u as usize], new_id[e.v as usize])),
    )
}

/// Edge-list parsing options.
#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Lines starting with any of these (after leading whitespace) are skipped.
    pub comment_prefixes: Vec<String>,
    /// Field separator; `None` splits on runs of whitespace.
    pub delimiter: Option<char>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            comment_prefixes: vec!["#".into(), "%".into()],
            delimiter: None,
        }
    }
}

/// Parses a two-column edge list into a simple undirected graph.
///
/// Labels become ids `0..n` in order of first appearance. Self-loops are
/// dropped (their endpoint still becomes a vertex), duplicates and reversed
/// pairs merge, and direction is ignored.
pub fn load_edge_list<R: BufRead>(source: R, options: &LoadOptions) -> Result<Graph> {
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut pairs = Vec::new();
    let mut intern = |token: &str| -> VertexId {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len() as VertexId;
        labels.push(token.to_string());
        ids.insert(token.to_string(), id);
        id
    };

    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty()
            || options
                .comment_prefixes
                .iter()
                .any(|p| !p.is_empty() && trimmed.starts_with(p.as_str()))
        {
            continue;
        }
        let tokens: Vec<&str> = match options.delimiter {
            Some(d) => trimmed.split(d).map(str::trim).collect(),
            None => trimmed.split_whitespace().collect(),
        };
        if tokens.len() != 2 || tokens.iter().any(|t| t.is_empty()) {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected two endpoint labels, found {}", tokens.len()),
            });
        }
        let a = intern(tokens[0]);
        let b = intern(tokens[1]);
        pairs.push((a, b));
    }

    if pairs.is_empty() {
        return Err(Error::NoEdges);
    }
    let g = Graph::with_labels(labels, pairs);
    log::info!(
        "loaded {} vertices and {} edges",
        g.num_vertices(),
        g.num_edges()
    );
    Ok(g)
}

pub fn load_edge_list_path(path: impl AsRef<Path>, options: &LoadOptions) -> Result<Graph> {
    let file = File::open(path)?;
    load_edge_list(BufReader::new(file), options)
}

/// Writes `u v` internal-id pairs with `u < v`, one per line, sorted.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    for e in g.edges() {
        writeln!(out, "{} {}", e.u, e.v)?;
    }
    out.flush()
}

/// Writes the `internal_id<TAB>external_label` sidecar.
pub fn write_label_map<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    for (i, label) in g.labels().iter().enumerate() {
        writeln!(out, "{i}\t{label}")?;
    }
    out.flush()
}
