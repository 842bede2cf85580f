use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{NbrwError, Result};
use crate::graph::Topology;

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloResult {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub labels: Vec<String>,
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
}

/// Outgoing oriented edges of one vertex. `back[i]` is the position of the
/// reversed edge in the list of `target[i]`.
struct Ends {
    target: Vec<usize>,
    back: Vec<usize>,
}

fn incidence<G: Topology + ?Sized>(g: &G) -> Vec<Ends> {
    let n = g.vertex_count();
    let mut ends: Vec<Ends> = (0..n)
        .map(|_| Ends {
            target: Vec::new(),
            back: Vec::new(),
        })
        .collect();
    for v in 0..n {
        for &(u, m) in g.neighbors(v) {
            if u < v {
                continue;
            }
            for _ in 0..m {
                let (iv, iu) = (ends[v].target.len(), ends[u].target.len());
                ends[v].target.push(u);
                ends[v].back.push(iu);
                ends[u].target.push(v);
                ends[u].back.push(iv);
            }
        }
        for _ in 0..g.loops(v) {
            // the two orientations of a loop are each other's reversal
            let i = ends[v].target.len();
            ends[v].target.extend([v, v]);
            ends[v].back.extend([i + 1, i]);
        }
    }
    ends
}

/// Empirical distribution of the vertex-NBRW after `n` steps from `x`.
///
/// Trial `t` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `t`, so
/// the result does not depend on how trials are scheduled across threads.
/// Walks run directly on the incidence structure of `g`: the first step picks
/// one of the `deg(x)` edge ends at `x`, and each later step picks uniformly
/// among the `deg − 1` ends other than the reverse of the edge just used.
/// For a truncated ball `g` must contain every vertex at distance `< n` with
/// all its incidences.
pub fn monte_carlo_nbrw<G: Topology + Sync + ?Sized>(
    g: &G,
    x: usize,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloResult> {
    if trials == 0 {
        return Err(NbrwError::BadParams("trials must be at least 1".into()));
    }
    if x >= g.vertex_count() {
        return Err(NbrwError::UnknownVertex(x.to_string()));
    }
    let ends = incidence(g);
    let walk = |t: u64| -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t);
        let mut v = x;
        let mut arrived: Option<usize> = None;
        for _ in 0..n {
            let out = &ends[v];
            let i = match arrived {
                None => rng.gen_range(0..out.target.len()),
                Some(b) => {
                    let r = rng.gen_range(0..out.target.len() - 1);
                    if r >= b {
                        r + 1
                    } else {
                        r
                    }
                }
            };
            arrived = Some(out.back[i]);
            v = out.target[i];
        }
        v
    };
    let counts = (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; g.vertex_count()],
            |mut acc, t| {
                acc[walk(t)] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; g.vertex_count()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(MonteCarloResult {
        n,
        trials,
        seed,
        labels: (0..g.vertex_count()).map(|v| g.label(v).to_string()).collect(),
        frequencies: counts.iter().map(|&c| c as f64 / trials as f64).collect(),
        counts,
    })
}

/// `½ Σ |p − q|`.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}
