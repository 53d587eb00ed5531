// SPDX-License-Identifier: Apache-2.0

//! Lloyd's k-means over sparse points with k-means++ seeding, and elbow
//! selection of the cluster count.

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::rng::SeededRng;

use super::profile::SparseVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMeansOptions {
    pub seed: u64,
    pub max_iters: usize,
    /// Stop once no centroid moves farther than this (Euclidean).
    pub tol: f64,
}

impl Default for KMeansOptions {
    fn default() -> Self {
        KMeansOptions {
            seed: 0,
            max_iters: 300,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterModel {
    pub k: usize,
    pub centroids: Vec<Vec<f64>>,
    pub assignments: Vec<usize>,
    /// Within-cluster sum of squared distances for the final assignment.
    pub sse: f64,
    /// SSE after every assignment step, first to last.
    pub sse_history: Vec<f64>,
}

impl ClusterModel {
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &a in &self.assignments {
            sizes[a] += 1;
        }
        sizes
    }
}

fn squared_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Nearest centroid (lowest index on ties) and the squared distance to it.
fn nearest(point: &SparseVector, centroids: &[Vec<f64>], norms: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, (centroid, &norm)) in centroids.iter().zip(norms).enumerate() {
        let d = point.squared_distance(centroid, norm);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// k-means++: the first center is `below(n)`; each further center is drawn
/// with probability proportional to the squared distance to the nearest
/// chosen center, by one `unit()` draw scaled by the total and a scan of the
/// running sum. If every point already coincides with a center, the lowest
/// index not yet chosen is taken without a draw.
fn seed_centroids(
    points: &[SparseVector],
    k: usize,
    rng: &mut SeededRng,
    exec: Execution,
) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut chosen = vec![false; n];
    let first = rng.below(n as u64) as usize;
    chosen[first] = true;
    let mut centroids = vec![points[first].to_dense()];
    let mut nearest_d2 = par::map_slice(exec, points, |p| {
        p.squared_distance(&centroids[0], squared_norm(&centroids[0]))
    });

    while centroids.len() < k {
        let total: f64 = nearest_d2.iter().sum();
        let next = if total > 0.0 {
            let target = rng.unit() * total;
            let mut running = 0.0;
            let mut pick = None;
            for (i, &d) in nearest_d2.iter().enumerate() {
                running += d;
                if d > 0.0 && running > target {
                    pick = Some(i);
                    break;
                }
            }
            // rounding can leave the target beyond the final sum
            pick.unwrap_or_else(|| nearest_d2.iter().rposition(|&d| d > 0.0).unwrap())
        } else {
            (0..n).find(|&i| !chosen[i]).unwrap()
        };
        chosen[next] = true;
        let centroid = points[next].to_dense();
        let norm = squared_norm(&centroid);
        let updated = par::map_indices(exec, n, |i| {
            nearest_d2[i].min(points[i].squared_distance(&centroid, norm))
        });
        nearest_d2 = updated;
        centroids.push(centroid);
    }
    centroids
}

/// Lloyd's algorithm.
///
/// Each round assigns every point to its nearest centroid and records the
/// SSE; the run stops when no assignment changed, the previous update moved
/// no centroid farther than `tol`, or `max_iters` assignment rounds are
/// done. Otherwise centroids move to their cluster means. A cluster left
/// empty is re-seeded at the point farthest from its current centroid,
/// lowest index first, never reusing a point within one update.
///
/// Assignment runs in parallel; every floating-point sum is sequential so
/// the result is identical under either [`Execution`].
pub fn kmeans(points: &[SparseVector], k: usize, options: &KMeansOptions) -> Result<ClusterModel> {
    kmeans_with(points, k, options, Execution::default())
}

pub fn kmeans_with(
    points: &[SparseVector],
    k: usize,
    options: &KMeansOptions,
    exec: Execution,
) -> Result<ClusterModel> {
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    if k > points.len() {
        return Err(Error::param(format!(
            "k = {k} exceeds the {} points to cluster",
            points.len()
        )));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::param("points differ in dimension"));
    }

    let mut rng = SeededRng::new(options.seed);
    let mut centroids = seed_centroids(points, k, &mut rng, exec);
    let mut assignments: Vec<usize> = Vec::new();
    let mut sse_history = Vec::new();
    let mut last_shift = f64::INFINITY;

    loop {
        let norms: Vec<f64> = centroids.iter().map(|c| squared_norm(c)).collect();
        let nearest_all = par::map_slice(exec, points, |p| nearest(p, &centroids, &norms));
        let sse: f64 = nearest_all.iter().map(|&(_, d)| d).sum();
        let next: Vec<usize> = nearest_all.iter().map(|&(c, _)| c).collect();
        let unchanged = next == assignments;
        assignments = next;
        sse_history.push(sse);

        if unchanged || last_shift <= options.tol || sse_history.len() >= options.max_iters {
            return Ok(ClusterModel {
                k,
                centroids,
                assignments,
                sse,
                sse_history,
            });
        }

        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &c) in points.iter().zip(&assignments) {
            counts[c] += 1;
            for (i, x) in p.entries() {
                sums[c][i] += x;
            }
        }
        let mut reseeded = vec![false; points.len()];
        let mut shift: f64 = 0.0;
        for c in 0..k {
            let updated = if counts[c] > 0 {
                let inv = 1.0 / counts[c] as f64;
                sums[c].iter().map(|s| s * inv).collect::<Vec<f64>>()
            } else {
                let mut far = None;
                for (i, &(_, d)) in nearest_all.iter().enumerate() {
                    if !reseeded[i] && far.is_none_or(|(_, best)| d > best) {
                        far = Some((i, d));
                    }
                }
                let (i, _) = far.expect("more points than clusters");
                reseeded[i] = true;
                points[i].to_dense()
            };
            let moved = updated
                .iter()
                .zip(&centroids[c])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            shift = shift.max(moved);
            centroids[c] = updated;
        }
        last_shift = shift;
    }
}

/// Smallest `k` (1-based) whose relative SSE improvement to `k + 1` is below
/// `min_gain`; a zero SSE counts as no improvement. Falls back to the last
/// `k` on the curve.
pub fn elbow_from_curve(sse_curve: &[f64], min_gain: f64) -> usize {
    for (i, pair) in sse_curve.windows(2).enumerate() {
        let gain = if pair[0] > 0.0 {
            (pair[0] - pair[1]) / pair[0]
        } else {
            0.0
        };
        if gain < min_gain {
            return i + 1;
        }
    }
    sse_curve.len().max(1)
}

/// Relative SSE improvement below which one more cluster is not worth it.
pub const ELBOW_MIN_GAIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct ElbowResult {
    pub k: usize,
    /// SSE for `k = 1, 2, ...`.
    pub sse_curve: Vec<f64>,
}

/// Runs k-means for `k = 1 ..= min(k_max, n)`, run `k` seeded with
/// `seed + k`, and applies [`elbow_from_curve`] with [`ELBOW_MIN_GAIN`].
pub fn elbow_select(
    points: &[SparseVector],
    k_max: usize,
    options: &KMeansOptions,
    exec: Execution,
) -> Result<ElbowResult> {
    if k_max < 2 {
        return Err(Error::param("k_max must be at least 2"));
    }
    if points.is_empty() {
        return Err(Error::param("no points to cluster"));
    }
    let upper = k_max.min(points.len());
    let runs = par::map_indices(exec, upper, |i| {
        let k = i + 1;
        let opts = KMeansOptions {
            seed: options.seed.wrapping_add(k as u64),
            ..*options
        };
        kmeans_with(points, k, &opts, exec).map(|m| m.sse)
    });
    let sse_curve = runs.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(ElbowResult {
        k: elbow_from_curve(&sse_curve, ELBOW_MIN_GAIN),
        sse_curve,
    })
}
