// SPDX-License-Identifier: Apache-2.0

//! Brute-force references and graph fixtures for the integration tests.
//!
//! The oracles work on plain edge lists with hash sets and never touch the
//! library's peeling code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use coretruss::Graph;

pub type Edge = (u32, u32);

fn canon(a: u32, b: u32) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn edge_set(g: &Graph) -> BTreeSet<Edge> {
    g.edges().iter().map(|e| (e.u(), e.v())).collect()
}

fn adjacency(n: usize, edges: &BTreeSet<Edge>) -> Vec<HashSet<u32>> {
    let mut adj = vec![HashSet::new(); n];
    for &(a, b) in edges {
        adj[a as usize].insert(b);
        adj[b as usize].insert(a);
    }
    adj
}

/// For each k, repeatedly deletes every vertex with fewer than k surviving
/// neighbors; survivors have core number >= k.
pub fn core_oracle(g: &Graph) -> Vec<u32> {
    let n = g.num_vertices();
    let edges = edge_set(g);
    let adj = adjacency(n, &edges);
    let mut core = vec![0u32; n];
    for k in 1..=n as u32 {
        let mut alive: HashSet<u32> = (0..n as u32).collect();
        loop {
            let doomed: Vec<u32> = alive
                .iter()
                .copied()
                .filter(|&u| {
                    (adj[u as usize].iter().filter(|v| alive.contains(v)).count() as u32) < k
                })
                .collect();
            if doomed.is_empty() {
                break;
            }
            for u in doomed {
                alive.remove(&u);
            }
        }
        if alive.is_empty() {
            break;
        }
        for u in alive {
            core[u as usize] = k;
        }
    }
    core
}

/// For each k, repeatedly deletes every edge in fewer than k triangles of the
/// surviving edge set; survivors have truss number >= k. Indexed like
/// `g.edges()`.
pub fn truss_oracle(g: &Graph) -> Vec<u32> {
    let all = edge_set(g);
    let mut truss: BTreeMap<Edge, u32> = all.iter().map(|&e| (e, 0)).collect();
    for k in 1.. {
        let mut alive = all.clone();
        loop {
            let adj = adjacency(g.num_vertices(), &alive);
            let doomed: Vec<Edge> = alive
                .iter()
                .copied()
                .filter(|&(a, b)| {
                    (adj[a as usize].intersection(&adj[b as usize]).count() as u32) < k
                })
                .collect();
            if doomed.is_empty() {
                break;
            }
            for e in doomed {
                alive.remove(&e);
            }
        }
        if alive.is_empty() {
            break;
        }
        for e in alive {
            truss.insert(e, k);
        }
    }
    g.edges().iter().map(|e| truss[&(e.u(), e.v())]).collect()
}

/// Triangles through each edge by checking every vertex triple.
pub fn triangle_oracle(g: &Graph) -> Vec<u32> {
    let n = g.num_vertices() as u32;
    let edges = edge_set(g);
    let has = |a: u32, b: u32| edges.contains(&canon(a, b));
    let mut count: BTreeMap<Edge, u32> = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            if !has(a, b) {
                continue;
            }
            for c in b + 1..n {
                if has(a, c) && has(b, c) {
                    for e in [(a, b), (a, c), (b, c)] {
                        *count.entry(e).or_default() += 1;
                    }
                }
            }
        }
    }
    g.edges()
        .iter()
        .map(|e| count.get(&(e.u(), e.v())).copied().unwrap_or(0))
        .collect()
}

/// Triangles at each vertex by checking every vertex triple.
pub fn vertex_triangle_oracle(g: &Graph) -> Vec<u32> {
    let n = g.num_vertices() as u32;
    let edges = edge_set(g);
    let has = |a: u32, b: u32| edges.contains(&canon(a, b));
    let mut tri = vec![0u32; n as usize];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if has(a, b) && has(a, c) && has(b, c) {
                    tri[a as usize] += 1;
                    tri[b as usize] += 1;
                    tri[c as usize] += 1;
                }
            }
        }
    }
    tri
}

/// A tiny independent G(n, m) sampler (xorshift64*) for property sweeps.
pub fn random_graph(n: u32, m: usize, seed: u64) -> Graph {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut next = move || {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        state.wrapping_mul(0x2545_F491_4F6C_DD1D)
    };
    let max_edges = (n as usize) * (n as usize - 1) / 2;
    let m = m.min(max_edges);
    let mut edges = BTreeSet::new();
    while edges.len() < m {
        let a = (next() % n as u64) as u32;
        let b = (next() % n as u64) as u32;
        if a != b {
            edges.insert(canon(a, b));
        }
    }
    Graph::from_edges(n as usize, edges)
}

pub fn clique_edges(vertices: &[u32]) -> Vec<Edge> {
    let mut out = Vec::new();
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

pub fn clique(k: u32) -> Graph {
    let vs: Vec<u32> = (0..k).collect();
    Graph::from_edges(k as usize, clique_edges(&vs))
}

/// Three disjoint 4-cliques on 0..12 and hub 12 adjacent to 0, 4 and 8.
pub fn gatekeeper_fixture() -> Graph {
    let mut edges = Vec::new();
    for block in 0..3u32 {
        let vs: Vec<u32> = (block * 4..block * 4 + 4).collect();
        edges.extend(clique_edges(&vs));
        edges.push((12, block * 4));
    }
    Graph::from_edges(13, edges)
}

/// Two 4-cliques {0..4} and {4..8} joined by the bridge 3-4.
pub fn bridged_cliques() -> Graph {
    let mut edges = clique_edges(&[0, 1, 2, 3]);
    edges.extend(clique_edges(&[4, 5, 6, 7]));
    edges.push((3, 4));
    Graph::from_edges(8, edges)
}

/// A layered toy: a 4-clique {0,1,2,3}, a triangle 2-3-4 hanging off it,
/// a 4-cycle 5-6-7-8 attached at 0-5, and pendants 9 (on 8) and 10 (on 4).
pub fn layered_toy() -> Graph {
    let mut edges = clique_edges(&[0, 1, 2, 3]);
    edges.extend([
        (2, 4),
        (3, 4),
        (0, 5),
        (5, 6),
        (6, 7),
        (7, 8),
        (8, 5),
        (8, 9),
        (4, 10),
    ]);
    Graph::from_edges(11, edges)
}

/// `copies` disjoint triangles followed by one `clique_size`-clique.
pub fn triangles_and_clique(copies: u32, clique_size: u32) -> Graph {
    let mut edges = Vec::new();
    for t in 0..copies {
        edges.extend(clique_edges(&[3 * t, 3 * t + 1, 3 * t + 2]));
    }
    let base = 3 * copies;
    let vs: Vec<u32> = (base..base + clique_size).collect();
    edges.extend(clique_edges(&vs));
    Graph::from_edges((base + clique_size) as usize, edges)
}

/// Rounding allowance when comparing consecutive k-means SSE values; in
/// exact arithmetic each Lloyd step cannot raise the SSE.
pub const SSE_ROUNDING: f64 = 1e-12;

pub fn sse_step_ok(before: f64, after: f64) -> bool {
    after <= before + SSE_ROUNDING * (1.0 + before)
}
