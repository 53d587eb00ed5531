// SPDX-License-Identifier: Apache-2.0

//! Seeded null-model generators.
//!
//! All randomness comes from [`SeededRng`], and each generator consumes it in
//! the order documented on the generator, so a seed pins the output graph.

use std::collections::{BTreeMap, HashSet};

use crate::decomposition::triangle_supports;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::par::{self, Execution};
use crate::rng::SeededRng;

/// Mean local clustering coefficient keyed by degree.
pub type ClusteringByDegree = BTreeMap<usize, f64>;

#[derive(Debug, Clone, PartialEq)]
pub enum NullModel {
    /// `m` distinct edges on `n` vertices, uniform without replacement.
    Er { n: usize, m: u64 },
    /// Erased configuration model on a degree sequence.
    Config { degrees: Vec<usize> },
    /// Block two-level Erdős–Rényi.
    Bter {
        degrees: Vec<usize>,
        ccd: ClusteringByDegree,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub model: NullModel,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(model: NullModel, seed: u64) -> Self {
        GeneratorSpec { model, seed }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.model {
            NullModel::Er { n, m } => {
                let pairs = pair_count(*n as u64);
                if *m > pairs {
                    return Err(Error::param(format!(
                        "m = {m} exceeds the {pairs} vertex pairs available for n = {n}"
                    )));
                }
                if *n > u32::MAX as usize {
                    return Err(Error::param("n does not fit 32-bit vertex ids"));
                }
            }
            NullModel::Config { degrees } => {
                if degrees.iter().sum::<usize>() % 2 != 0 {
                    return Err(Error::param("degree sum is odd"));
                }
            }
            NullModel::Bter { degrees, ccd } => {
                if degrees.is_empty() {
                    return Err(Error::param("empty degree sequence"));
                }
                if let Some((d, c)) = ccd.iter().find(|(_, c)| !(0.0..=1.0).contains(*c)) {
                    return Err(Error::param(format!(
                        "clustering coefficient {c} for degree {d} is outside [0, 1]"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Degree sequence and clustering-coefficient-per-degree of a reference graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceStats {
    pub degrees: Vec<usize>,
    pub ccd: ClusteringByDegree,
}

/// `ccd(d)` is the mean of `2 tri(u) / (d (d - 1))` over vertices of degree
/// `d`; degrees below 2 have no entry.
pub fn extract_reference_stats(g: &Graph) -> ReferenceStats {
    let supports = triangle_supports(g);
    let degrees = g.degrees();
    let mut sums: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for u in g.vertices() {
        let d = degrees[u as usize];
        if d < 2 {
            continue;
        }
        // each triangle at u is counted once by each of its two edges at u
        let twice_tri: u64 = g
            .incident_edges(u)
            .iter()
            .map(|&e| supports[e as usize] as u64)
            .sum();
        let local = twice_tri as f64 / (d * (d - 1)) as f64;
        let slot = sums.entry(d).or_default();
        slot.0 += local;
        slot.1 += 1;
    }
    let ccd = sums
        .into_iter()
        .map(|(d, (sum, count))| (d, sum / count as f64))
        .collect();
    ReferenceStats { degrees, ccd }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match &spec.model {
        NullModel::Er { n, m } => generate_er(*n, *m, spec.seed),
        NullModel::Config { degrees } => generate_config(degrees, spec.seed),
        NullModel::Bter { degrees, ccd } => generate_bter(degrees, ccd, spec.seed),
    }
}

/// One graph per seed, in seed order.
pub fn generate_batch(model: &NullModel, seeds: &[u64], exec: Execution) -> Result<Vec<Graph>> {
    par::map_slice(exec, seeds, |&seed| {
        generate(&GeneratorSpec::new(model.clone(), seed))
    })
    .into_iter()
    .collect()
}

fn pair_count(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Inverse of `index = v (v - 1) / 2 + u` for `u < v`.
fn pair_from_index(index: u64) -> (VertexId, VertexId) {
    let mut v = ((1.0 + (1.0 + 8.0 * index as f64).sqrt()) / 2.0) as u64;
    while pair_count(v) > index {
        v -= 1;
    }
    while pair_count(v + 1) <= index {
        v += 1;
    }
    ((index - pair_count(v)) as VertexId, v as VertexId)
}

/// Uniform `G(n, m)`.
///
/// Draws: Floyd's subset sampling over pair indices `0..n(n-1)/2`. For
/// `j` in `total - m .. total`, draw `t = below(j + 1)`; keep `t`, or `j` if
/// `t` was already kept. Index `v (v - 1) / 2 + u` names the pair `u < v`.
pub fn generate_er(n: usize, m: u64, seed: u64) -> Result<Graph> {
    GeneratorSpec::new(NullModel::Er { n, m }, seed).validate()?;
    let total = pair_count(n as u64);
    let mut rng = SeededRng::new(seed);
    let mut chosen: HashSet<u64> = HashSet::with_capacity(m as usize);
    for j in total - m..total {
        let t = rng.below(j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    Ok(Graph::from_edges(
        n,
        chosen.into_iter().map(pair_from_index),
    ))
}

/// Shuffles the stub list and pairs consecutive stubs.
///
/// Draws: the stub list holds vertex `u` repeated `degrees[u]` times in
/// increasing `u`; it is shuffled with [`SeededRng::shuffle`] and stubs
/// `(2i, 2i + 1)` are joined. Self-loops and repeats are erased.
fn pair_stubs(
    num_vertices: usize,
    mut stubs: Vec<VertexId>,
    rng: &mut SeededRng,
) -> Vec<(VertexId, VertexId)> {
    debug_assert!(stubs.len().is_multiple_of(2));
    debug_assert!(stubs.iter().all(|&s| (s as usize) < num_vertices));
    rng.shuffle(&mut stubs);
    stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect()
}

fn stubs_of(degrees: &[usize]) -> Vec<VertexId> {
    degrees
        .iter()
        .enumerate()
        .flat_map(|(u, &d)| std::iter::repeat_n(u as VertexId, d))
        .collect()
}

/// Erased configuration model; see [`pair_stubs`] for the draw order.
pub fn generate_config(degrees: &[usize], seed: u64) -> Result<Graph> {
    GeneratorSpec::new(
        NullModel::Config {
            degrees: degrees.to_vec(),
        },
        seed,
    )
    .validate()?;
    let mut rng = SeededRng::new(seed);
    let pairs = pair_stubs(degrees.len(), stubs_of(degrees), &mut rng);
    Ok(Graph::from_edges(degrees.len(), pairs))
}

/// Affinity blocks for BTER phase one: vertices of degree >= 2, sorted by
/// `(degree, id)`, cut greedily into runs of `d + 1` where `d` is the degree
/// of the run's first (smallest) member. The last run may be shorter.
pub fn affinity_blocks(degrees: &[usize]) -> Vec<Vec<VertexId>> {
    let mut sorted: Vec<VertexId> = (0..degrees.len() as VertexId)
        .filter(|&u| degrees[u as usize] >= 2)
        .collect();
    sorted.sort_by_key(|&u| (degrees[u as usize], u));
    let mut blocks = Vec::new();
    let mut rest = &sorted[..];
    while let Some(&first) = rest.first() {
        let size = (degrees[first as usize] + 1).min(rest.len());
        blocks.push(rest[..size].to_vec());
        rest = &rest[size..];
    }
    blocks
}

/// Block two-level Erdős–Rényi.
///
/// Phase one walks the [`affinity_blocks`] in order. A block whose smallest
/// degree is `d` is an Erdős–Rényi graph with edge probability
/// `ccd(d)^(1/3)` (0 when `ccd` has no entry for `d`): for every member pair
/// `(a, b)`, `a` before `b` in block order, one [`SeededRng::unit`] draw
/// below the probability adds the edge. Blocks with probability 0 draw
/// nothing.
///
/// Phase two gives every vertex `target - phase-one degree` stubs and pairs
/// them as in the configuration model. If the stub count is odd the last
/// stub is dropped. Self-loops and repeated edges (including repeats of
/// phase-one edges) are erased, so no vertex exceeds its target degree.
pub fn generate_bter(degrees: &[usize], ccd: &ClusteringByDegree, seed: u64) -> Result<Graph> {
    GeneratorSpec::new(
        NullModel::Bter {
            degrees: degrees.to_vec(),
            ccd: ccd.clone(),
        },
        seed,
    )
    .validate()?;
    let n = degrees.len();
    let mut rng = SeededRng::new(seed);

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut phase_one_degree = vec![0usize; n];
    for block in affinity_blocks(degrees) {
        let d = degrees[block[0] as usize];
        let p = ccd.get(&d).copied().unwrap_or(0.0).cbrt();
        if p <= 0.0 {
            continue;
        }
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                if rng.unit() < p {
                    edges.push((a, b));
                    phase_one_degree[a as usize] += 1;
                    phase_one_degree[b as usize] += 1;
                }
            }
        }
    }

    let excess: Vec<usize> = degrees
        .iter()
        .zip(&phase_one_degree)
        .map(|(&target, &inner)| target - inner)
        .collect();
    let mut stubs = stubs_of(&excess);
    if stubs.len() % 2 == 1 {
        stubs.pop();
    }
    edges.extend(pair_stubs(n, stubs, &mut rng));
    Ok(Graph::from_edges(n, edges))
}

/// Total variation distance between the degree distributions of two
/// sequences, `0.5 * Σ_d |P(d) - Q(d)|`.
pub fn degree_distribution_tvd(a: &[usize], b: &[usize]) -> f64 {
    let histogram = |seq: &[usize]| {
        let mut h: BTreeMap<usize, f64> = BTreeMap::new();
        for &d in seq {
            *h.entry(d).or_default() += 1.0 / seq.len() as f64;
        }
        h
    };
    let (ha, hb) = (histogram(a), histogram(b));
    let keys: std::collections::BTreeSet<usize> = ha.keys().chain(hb.keys()).copied().collect();
    0.5 * keys
        .into_iter()
        .map(|d| (ha.get(&d).unwrap_or(&0.0) - hb.get(&d).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}
