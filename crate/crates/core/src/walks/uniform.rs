use serde::Serialize;

use crate::edge_space::{turnaround_bound, NbrwKernel};

#[derive(Clone, Debug, Serialize)]
pub struct UniformIrreducibilityReport {
    pub k: usize,
    pub epsilon: f64,
    /// Every SOLG-adjacent pair is reached within `k` steps with probability `>= epsilon`.
    pub feasible: bool,
    /// Smallest `K` that works for `epsilon`, searched up to `max(k, 2L + 1)`.
    pub minimal_k: Option<usize>,
    /// `min over pairs of max_{j <= k} q_E^(j)(e, f)`.
    pub attained_epsilon: f64,
    pub turnaround: Option<usize>,
    /// `2L + 1`.
    pub predicted_k: Option<usize>,
    /// `(M − 1)^−(2L+1)`.
    pub predicted_epsilon: Option<f64>,
    /// First pair that is not reached within `k` steps, as edge descriptions.
    pub failing_pair: Option<(String, String)>,
}

/// Checks that for every pair `(e, f)` adjacent in the symmetrized oriented
/// line graph some `j <= k` has `q_E^(j)(e, f) >= epsilon`. Both orders of
/// each adjacent pair are tested.
pub fn uniform_irreducibility_check(
    kernel: &NbrwKernel,
    k: usize,
    epsilon: f64,
) -> UniformIrreducibilityReport {
    let space = kernel.space();
    let turnaround = turnaround_bound(kernel);
    let max_deg = (0..space.vertex_count()).map(|v| space.degree(v)).max().unwrap_or(2);
    let predicted_k = turnaround.map(|l| 2 * l + 1);
    let horizon = k.max(predicted_k.unwrap_or(0));
    let weights = kernel.weights::<f64>();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for e in 0..space.len() {
        for f in space.successors(e) {
            pairs.push((e, f));
            pairs.push((f, e));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let mut first_hit = vec![None; pairs.len()];
    let mut best_within_k = vec![0.0f64; pairs.len()];
    let mut start = 0;
    while start < pairs.len() {
        let e = pairs[start].0;
        let end = start + pairs[start..].iter().take_while(|p| p.0 == e).count();
        let mut row = vec![0.0; space.len()];
        row[e] = 1.0;
        for j in 1..=horizon {
            row = kernel.push_forward(&row, &weights);
            for i in start..end {
                let q = row[pairs[i].1];
                if j <= k {
                    best_within_k[i] = best_within_k[i].max(q);
                }
                if first_hit[i].is_none() && q >= epsilon {
                    first_hit[i] = Some(j);
                }
            }
        }
        start = end;
    }

    let attained_epsilon = best_within_k.iter().copied().fold(f64::INFINITY, f64::min);
    let feasible = best_within_k.iter().all(|&b| b >= epsilon);
    let minimal_k = first_hit
        .iter()
        .try_fold(0, |acc, h| h.map(|j| acc.max(j)));
    let failing_pair = best_within_k
        .iter()
        .position(|&b| b < epsilon)
        .map(|i| (space.describe(pairs[i].0), space.describe(pairs[i].1)));
    UniformIrreducibilityReport {
        k,
        epsilon,
        feasible,
        minimal_k,
        attained_epsilon: if pairs.is_empty() { 0.0 } else { attained_epsilon },
        turnaround,
        predicted_k,
        predicted_epsilon: predicted_k.map(|pk| (max_deg as f64 - 1.0).powi(-(pk as i32))),
        failing_pair,
    }
}
