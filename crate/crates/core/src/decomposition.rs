// SPDX-License-Identifier: Apache-2.0

//! Core and truss decompositions by bucket peeling.
//!
//! Truss numbers count triangles: the edges of a lone triangle have truss
//! number 1 and every edge belongs to the 0-truss. Under this indexing a
//! k-clique is a (k-1)-core and a (k-2)-truss.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{Graph, VertexId};
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreResult {
    pub core_numbers: Vec<u32>,
    pub core_degeneracy: u32,
}

/// Per-edge values are indexed like [`Graph::edges`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrussResult {
    pub truss_numbers: Vec<u32>,
    pub triangle_support: Vec<u32>,
    pub truss_degeneracy: u32,
}

/// Batagelj–Zaversnik peeling: vertices sit in an array bucket-sorted by
/// current degree; the lowest one is repeatedly removed, its current degree
/// becomes its core number, and each neighbor with a larger degree is swapped
/// to the front of its bucket and moved down one. O(|V| + |E|).
pub fn core_decompose(g: &Graph) -> CoreResult {
    let n = g.num_vertices();
    let mut degree: Vec<usize> = g.degrees();
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    // bucket_start[d] = first position in `order` holding a vertex of degree d
    let mut bucket_start = vec![0usize; max_degree + 2];
    for &d in &degree {
        bucket_start[d + 1] += 1;
    }
    for d in 1..bucket_start.len() {
        bucket_start[d] += bucket_start[d - 1];
    }
    let mut order = vec![0 as VertexId; n];
    let mut position = vec![0usize; n];
    {
        let mut next = bucket_start.clone();
        for u in 0..n {
            let d = degree[u];
            position[u] = next[d];
            order[next[d]] = u as VertexId;
            next[d] += 1;
        }
    }

    for i in 0..n {
        let u = order[i] as usize;
        let du = degree[u];
        for &w in g.neighbors(u as VertexId) {
            let w = w as usize;
            let dw = degree[w];
            if dw > du {
                let pw = position[w];
                let front = bucket_start[dw];
                let x = order[front] as usize;
                if x != w {
                    order.swap(pw, front);
                    position[x] = pw;
                    position[w] = front;
                }
                bucket_start[dw] += 1;
                degree[w] -= 1;
            }
        }
    }

    let core_numbers: Vec<u32> = degree.into_iter().map(|d| d as u32).collect();
    let core_degeneracy = core_numbers.iter().copied().max().unwrap_or(0);
    CoreResult {
        core_numbers,
        core_degeneracy,
    }
}

/// `|a ∩ b|` for strictly increasing slices: a linear merge when the lengths
/// are comparable, binary searches from the shorter side otherwise.
pub(crate) fn intersection_size(a: &[VertexId], b: &[VertexId]) -> usize {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return 0;
    }
    if long.len() / short.len() >= 16 {
        let mut rest = long;
        let mut count = 0;
        for x in short {
            match rest.binary_search(x) {
                Ok(i) => {
                    count += 1;
                    rest = &rest[i + 1..];
                }
                Err(i) => rest = &rest[i..],
            }
        }
        return count;
    }
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < short.len() && j < long.len() {
        match short[i].cmp(&long[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Number of triangles through each edge, `|N(u) ∩ N(v)|`.
pub fn triangle_supports(g: &Graph) -> Vec<u32> {
    triangle_supports_with(g, Execution::default())
}

pub fn triangle_supports_with(g: &Graph, exec: Execution) -> Vec<u32> {
    par::map_slice(exec, g.edges(), |e| {
        intersection_size(g.neighbors(e.u()), g.neighbors(e.v())) as u32
    })
}

/// Truss peeling over a bucket-sorted edge array.
///
/// The edge with the smallest current support is removed and that support
/// becomes its truss number; for every triangle it closes with two surviving
/// edges, each of those whose support is still larger drops by one bucket.
/// Triangles are found by scanning the lower-degree endpoint and
/// binary-searching the other, within the O(Σ d(v)²) bound.
pub fn truss_decompose(g: &Graph) -> TrussResult {
    truss_decompose_with(g, Execution::default())
}

pub fn truss_decompose_with(g: &Graph, exec: Execution) -> TrussResult {
    let triangle_support = triangle_supports_with(g, exec);
    let m = g.num_edges();
    let mut support = triangle_support.clone();
    let max_support = support.iter().copied().max().unwrap_or(0) as usize;

    let mut bucket_start = vec![0usize; max_support + 2];
    for &s in &support {
        bucket_start[s as usize + 1] += 1;
    }
    for s in 1..bucket_start.len() {
        bucket_start[s] += bucket_start[s - 1];
    }
    let mut order = vec![0u32; m];
    let mut position = vec![0usize; m];
    {
        let mut next = bucket_start.clone();
        for e in 0..m {
            let s = support[e] as usize;
            position[e] = next[s];
            order[next[s]] = e as u32;
            next[s] += 1;
        }
    }

    let mut removed = vec![false; m];

    for i in 0..m {
        let e = order[i] as usize;
        let k = support[e];
        removed[e] = true;
        let edge = g.edge(e);
        let (a, b) = if g.degree(edge.u()) <= g.degree(edge.v()) {
            (edge.u(), edge.v())
        } else {
            (edge.v(), edge.u())
        };
        let b_neighbors = g.neighbors(b);
        let b_edges = g.incident_edges(b);
        for (&w, &e_aw) in g.neighbors(a).iter().zip(g.incident_edges(a)) {
            let e_aw = e_aw as usize;
            if w == b || removed[e_aw] {
                continue;
            }
            let Ok(slot) = b_neighbors.binary_search(&w) else {
                continue;
            };
            let e_bw = b_edges[slot] as usize;
            if removed[e_bw] {
                continue;
            }
            for other in [e_aw, e_bw] {
                if support[other] > k {
                    // swap to the front of its bucket, then shrink the bucket
                    let s = support[other] as usize;
                    let p = position[other];
                    let front = bucket_start[s];
                    let x = order[front] as usize;
                    if x != other {
                        order.swap(p, front);
                        position[x] = p;
                        position[other] = front;
                    }
                    bucket_start[s] += 1;
                    support[other] -= 1;
                }
            }
        }
    }

    let truss_degeneracy = support.iter().copied().max().unwrap_or(0);
    TrussResult {
        truss_numbers: support,
        triangle_support,
        truss_degeneracy,
    }
}

impl TrussResult {
    /// Largest truss number among edges touching `u`; `None` when isolated.
    pub fn max_adjacent(&self, g: &Graph, u: VertexId) -> Option<u32> {
        g.incident_edges(u)
            .iter()
            .map(|&e| self.truss_numbers[e as usize])
            .max()
    }
}

/// Disjoint-set forest with path halving and union by size.
struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Maximal connected k-cores: components of the subgraph induced by
/// `{u : K(u) >= k}`. Each component is sorted; components are ordered by
/// their smallest vertex. For `k = 0` isolated vertices form singletons.
pub fn k_core_components(g: &Graph, core: &CoreResult, k: u32) -> Vec<Vec<VertexId>> {
    let n = g.num_vertices();
    let inside = |u: VertexId| core.core_numbers[u as usize] >= k;
    let mut sets = DisjointSets::new(n);
    for e in g.edges() {
        if inside(e.u()) && inside(e.v()) {
            sets.union(e.u(), e.v());
        }
    }
    let mut groups: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
    let mut first_of_root: Vec<Option<u32>> = vec![None; n];
    for u in g.vertices().filter(|&u| inside(u)) {
        let root = sets.find(u) as usize;
        let key = *first_of_root[root].get_or_insert(u);
        groups.entry(key).or_default().push(u);
    }
    groups.into_values().collect()
}

/// Connected components of the subgraph formed by edges with `T(e) >= k`,
/// connected through shared vertices, each returned as sorted edge indices.
/// Components are ordered by their smallest edge index.
pub fn k_truss_components(g: &Graph, truss: &TrussResult, k: u32) -> Vec<Vec<usize>> {
    let mut sets = DisjointSets::new(g.num_vertices());
    let kept: Vec<usize> = (0..g.num_edges())
        .filter(|&e| truss.truss_numbers[e] >= k)
        .collect();
    for &e in &kept {
        let edge = g.edge(e);
        sets.union(edge.u(), edge.v());
    }
    let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    let mut first_of_root: Vec<Option<u32>> = vec![None; g.num_vertices()];
    for e in kept {
        let root = sets.find(g.edge(e).u()) as usize;
        let key = *first_of_root[root].get_or_insert(e as u32);
        groups.entry(key).or_default().push(e);
    }
    groups.into_values().collect()
}
