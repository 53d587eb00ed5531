// SPDX-License-Identifier: Apache-2.0

use log::warn;

use crate::decomposition::TrussResult;
use crate::graph::{Graph, VertexId};

/// Sparse vector of fixed logical length; indices strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    len: usize,
    indices: Vec<u32>,
    values: Vec<f64>,
}

impl SparseVector {
    pub fn from_dense(dense: &[f64]) -> Self {
        let (indices, values) = dense
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0.0)
            .map(|(i, &x)| (i as u32, x))
            .unzip();
        SparseVector {
            len: dense.len(),
            indices,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.indices
            .iter()
            .zip(&self.values)
            .map(|(&i, &x)| (i as usize, x))
    }

    pub fn get(&self, index: usize) -> f64 {
        match self.indices.binary_search(&(index as u32)) {
            Ok(slot) => self.values[slot],
            Err(_) => 0.0,
        }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.len];
        for (i, x) in self.entries() {
            dense[i] = x;
        }
        dense
    }

    /// `||self - dense||²` given `||dense||²`.
    pub(crate) fn squared_distance(&self, dense: &[f64], dense_norm: f64) -> f64 {
        // centroid mass off the support, plus exact squares on it
        let mut on_support = 0.0;
        let mut diff = 0.0;
        for (i, x) in self.entries() {
            on_support += dense[i] * dense[i];
            diff += (x - dense[i]) * (x - dense[i]);
        }
        (dense_norm - on_support).max(0.0) + diff
    }
}

/// Distribution of truss numbers over a vertex's incident edges, padded to
/// length `truss_degeneracy + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrussProfile {
    pub vertex: VertexId,
    pub probabilities: SparseVector,
}

/// Profiles for `vertices`, in the given order. Isolated vertices have no
/// profile; they are skipped with a warning.
pub fn truss_profiles(g: &Graph, truss: &TrussResult, vertices: &[VertexId]) -> Vec<TrussProfile> {
    let len = truss.truss_degeneracy as usize + 1;
    let mut skipped = 0usize;
    let profiles = vertices
        .iter()
        .filter_map(|&u| {
            let incident = g.incident_edges(u);
            if incident.is_empty() {
                skipped += 1;
                return None;
            }
            let mut levels: Vec<u32> = incident
                .iter()
                .map(|&e| truss.truss_numbers[e as usize])
                .collect();
            levels.sort_unstable();
            let total = levels.len() as f64;
            let mut indices = Vec::new();
            let mut values = Vec::new();
            for chunk in levels.chunk_by(|a, b| a == b) {
                indices.push(chunk[0]);
                values.push(chunk.len() as f64 / total);
            }
            Some(TrussProfile {
                vertex: u,
                probabilities: SparseVector {
                    len,
                    indices,
                    values,
                },
            })
        })
        .collect();
    if skipped > 0 {
        warn!("{skipped} isolated vertices have no truss-profile and were skipped");
    }
    profiles
}
