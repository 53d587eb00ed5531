// SPDX-License-Identifier: Apache-2.0

/// Mean and population standard deviation.
pub fn population_stats(values: &[u32]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mu = values.iter().map(|&v| v as f64).sum::<f64>() / n;
    let var = values
        .iter()
        .map(|&v| {
            let d = v as f64 - mu;
            d * d
        })
        .sum::<f64>()
        / n;
    (mu, var.sqrt())
}

/// Members whose `|z| = |(v - μ) / σ|` strictly exceeds `cutoff`, as
/// `(index, z)`. A constant population (σ = 0) has no outliers.
pub fn zscore_outliers(values: &[u32], cutoff: f64) -> Vec<(usize, f64)> {
    let (mu, sigma) = population_stats(values);
    if sigma == 0.0 {
        return Vec::new();
    }
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| (i, (v as f64 - mu) / sigma))
        .filter(|(_, z)| z.abs() > cutoff)
        .collect()
}
