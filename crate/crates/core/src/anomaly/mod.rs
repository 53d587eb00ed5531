// SPDX-License-Identifier: Apache-2.0

//! Core-truss discrepancy detection.
//!
//! Vertices whose core number is not among the lowest quarter are described
//! by their truss-profile, clustered with k-means, and within each cluster
//! any vertex whose core number has `|z| > 2` is reported. Reported vertices
//! are labelled clique-like (core number close to the largest incident truss
//! number) or gatekeeper (large core number, only low-truss incident edges).

mod kmeans;
mod profile;
mod zscore;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::decomposition::{core_decompose, truss_decompose_with, CoreResult, TrussResult};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::par::Execution;

pub use kmeans::{
    elbow_from_curve, elbow_select, kmeans, kmeans_with, ClusterModel, ElbowResult, KMeansOptions,
    ELBOW_MIN_GAIN,
};
pub use profile::{truss_profiles, SparseVector, TrussProfile};
pub use zscore::{population_stats, zscore_outliers};

/// Core number at index `floor(fraction * |V|)` of the ascending sort.
pub fn core_threshold(core: &CoreResult, fraction: f64) -> Result<u32> {
    if core.core_numbers.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !(0.0..1.0).contains(&fraction) {
        return Err(Error::param(format!(
            "threshold fraction {fraction} is outside [0, 1)"
        )));
    }
    let mut sorted = core.core_numbers.clone();
    sorted.sort_unstable();
    let index = (fraction * sorted.len() as f64).floor() as usize;
    Ok(sorted[index.min(sorted.len() - 1)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureClass {
    CliqueLike,
    Gatekeeper,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnomalyOptions {
    pub seed: u64,
    /// Fixed cluster count; `None` selects it with the elbow rule.
    pub clusters: Option<usize>,
    pub k_max: usize,
    pub threshold_fraction: f64,
    pub z_cutoff: f64,
    /// Clique-like when `K - maxT <= clique_gap`.
    pub clique_gap: u32,
    /// Gatekeeper when `maxT <= gatekeeper_ratio * K`.
    pub gatekeeper_ratio: f64,
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for AnomalyOptions {
    fn default() -> Self {
        AnomalyOptions {
            seed: 42,
            clusters: None,
            k_max: 30,
            threshold_fraction: 0.25,
            z_cutoff: 2.0,
            clique_gap: 2,
            gatekeeper_ratio: 0.5,
            max_iters: 300,
            tol: 1e-9,
        }
    }
}

impl AnomalyOptions {
    pub fn classify(&self, core: u32, max_truss: u32) -> StructureClass {
        if core.saturating_sub(max_truss) <= self.clique_gap {
            StructureClass::CliqueLike
        } else if max_truss as f64 <= self.gatekeeper_ratio * core as f64 {
            StructureClass::Gatekeeper
        } else {
            StructureClass::Other
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSummary {
    pub id: usize,
    pub size: usize,
    pub mu: f64,
    pub sigma: f64,
    /// Core number -> member count.
    pub histogram: BTreeMap<u32, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutlierRecord {
    #[serde(skip)]
    pub vertex: VertexId,
    pub label: String,
    pub cluster: usize,
    pub core: u32,
    pub z: f64,
    pub max_truss: u32,
    pub class: StructureClass,
}

/// Serializes to `{threshold, clusters, outliers, sse_curve}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnomalyReport {
    pub threshold: u32,
    pub clusters: Vec<ClusterSummary>,
    pub outliers: Vec<OutlierRecord>,
    /// SSE for `k = 1, 2, ...` when the elbow rule ran; empty when the
    /// cluster count was fixed.
    pub sse_curve: Vec<f64>,
    #[serde(skip)]
    pub sse_history: Vec<f64>,
}

pub fn core_truss_dd(g: &Graph, options: &AnomalyOptions) -> Result<AnomalyReport> {
    let exec = Execution::default();
    let core = core_decompose(g);
    let truss = truss_decompose_with(g, exec);
    core_truss_dd_with(g, &core, &truss, options, exec)
}

/// The detection pipeline on precomputed decompositions of `g`.
pub fn core_truss_dd_with(
    g: &Graph,
    core: &CoreResult,
    truss: &TrussResult,
    options: &AnomalyOptions,
    exec: Execution,
) -> Result<AnomalyReport> {
    let threshold = core_threshold(core, options.threshold_fraction)?;
    let retained: Vec<VertexId> = g
        .vertices()
        .filter(|&u| core.core_numbers[u as usize] >= threshold)
        .collect();
    let profiles = truss_profiles(g, truss, &retained);
    if profiles.is_empty() {
        return Err(Error::param(
            "no vertex at or above the core threshold has incident edges",
        ));
    }
    let points: Vec<SparseVector> = profiles.iter().map(|p| p.probabilities.clone()).collect();

    let kmeans_options = KMeansOptions {
        seed: options.seed,
        max_iters: options.max_iters,
        tol: options.tol,
    };
    let (k, sse_curve) = match options.clusters {
        Some(k) => (k, Vec::new()),
        None => {
            let elbow = elbow_select(&points, options.k_max, &kmeans_options, exec)?;
            (elbow.k, elbow.sse_curve)
        }
    };
    log::info!(
        "core threshold {threshold}: clustering {} profiles into {k} clusters",
        points.len()
    );
    let model = kmeans_with(&points, k, &kmeans_options, exec)?;

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, &c) in model.assignments.iter().enumerate() {
        members[c].push(i);
    }

    let mut clusters = Vec::with_capacity(k);
    let mut outliers = Vec::new();
    for (id, member_idx) in members.iter().enumerate() {
        let cores: Vec<u32> = member_idx
            .iter()
            .map(|&i| core.core_numbers[profiles[i].vertex as usize])
            .collect();
        let (mu, sigma) = population_stats(&cores);
        let mut histogram = BTreeMap::new();
        for &c in &cores {
            *histogram.entry(c).or_insert(0) += 1;
        }
        clusters.push(ClusterSummary {
            id,
            size: cores.len(),
            mu,
            sigma,
            histogram,
        });
        for (j, z) in zscore_outliers(&cores, options.z_cutoff) {
            let vertex = profiles[member_idx[j]].vertex;
            let max_truss = truss
                .max_adjacent(g, vertex)
                .expect("profiled vertices have incident edges");
            outliers.push(OutlierRecord {
                vertex,
                label: g.label(vertex).to_string(),
                cluster: id,
                core: cores[j],
                z,
                max_truss,
                class: options.classify(cores[j], max_truss),
            });
        }
    }

    Ok(AnomalyReport {
        threshold,
        clusters,
        outliers,
        sse_curve,
        sse_history: model.sse_history,
    })
}
