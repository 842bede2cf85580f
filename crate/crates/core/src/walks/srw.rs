use num::rational::BigRational;
use num::Zero;
use serde::Serialize;

use super::{exact_radius, VertexDistribution};
use crate::error::{NbrwError, Result};
use crate::graph::{
    ball_source_within, bfs_distances, is_bipartite, GraphSource, Multigraph, Topology, VertexKey,
};
use crate::numeric::Weight;

/// One step of SRW, `p(x, y) = e(x, y) / deg(x)`, as a row-vector product.
fn srw_step<G: Topology + ?Sized, T: Weight>(g: &G, dist: &[T]) -> Vec<T> {
    let mut next = vec![T::zero(); dist.len()];
    for v in 0..dist.len() {
        if dist[v].is_zero() {
            continue;
        }
        let deg = g.degree(v) as u64;
        for &(u, m) in g.neighbors(v) {
            next[u] += dist[v].clone() * T::from_ratio(m as u64, deg);
        }
        if g.loops(v) > 0 {
            next[v] += dist[v].clone() * T::from_ratio(2 * g.loops(v) as u64, deg);
        }
    }
    next
}

/// `p^(n)(x, ·)` for `n = 0..=n_max`; indexed `[n][y]`.
pub fn srw_trajectory<G: Topology + ?Sized, T: Weight>(
    g: &G,
    x: usize,
    n_max: usize,
) -> Result<Vec<Vec<T>>> {
    if x >= g.vertex_count() {
        return Err(NbrwError::UnknownVertex(x.to_string()));
    }
    let mut dist = vec![T::zero(); g.vertex_count()];
    dist[x] = T::one();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(dist.clone());
    for _ in 0..n_max {
        dist = srw_step(g, &dist);
        out.push(dist.clone());
    }
    Ok(out)
}

pub fn srw_nstep<G: Topology + ?Sized, T: Weight>(
    g: &G,
    x: usize,
    n: usize,
) -> Result<VertexDistribution<T>> {
    let traj = srw_trajectory::<_, T>(g, x, n)?;
    Ok(VertexDistribution {
        labels: (0..g.vertex_count()).map(|v| g.label(v).to_string()).collect(),
        values: traj.into_iter().last().unwrap(),
    })
}

/// `p^(n)(x, y)` on an infinite source for `n = 0..=n_max`.
pub fn srw_trajectory_source<T: Weight>(
    src: &dyn GraphSource,
    x: &VertexKey,
    y: &VertexKey,
    n_max: usize,
    max_vertices: usize,
) -> Result<Vec<T>> {
    let reach = super::source_distance(src, x, y, n_max).unwrap_or(n_max);
    let b = ball_source_within(src, x, exact_radius(n_max, reach), max_vertices)?;
    let Some(target) = b.vertex_id(&src.label(y)) else {
        return Ok(vec![T::zero(); n_max + 1]);
    };
    Ok(srw_trajectory::<_, T>(&b, b.center(), n_max)?
        .into_iter()
        .map(|row| row[target].clone())
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SrwLimitRow<T> {
    pub n: usize,
    pub vertex: String,
    pub p: T,
    pub target: T,
    pub residual: T,
}

/// SRW trajectories with residuals against the stationary target
/// `deg(y)/|E|` (doubled on the parity class of `d(x, y)` when bipartite).
pub fn srw_limit_profile<T: Weight>(
    g: &Multigraph,
    x: usize,
    n_max: usize,
) -> Result<Vec<SrwLimitRow<T>>> {
    let traj = srw_trajectory::<_, T>(g, x, n_max)?;
    let total = g.num_oriented_edges() as u64;
    let bipartite = is_bipartite(g).is_bipartite();
    let dist = bfs_distances(g, x);
    let mut rows = Vec::new();
    for (n, row) in traj.iter().enumerate() {
        for y in 0..g.vertex_count() {
            let base = <BigRational as Weight>::from_ratio(g.degree(y) as u64, total);
            let target = if !bipartite {
                base
            } else if n % 2 == dist[y].unwrap_or(0) % 2 {
                base * BigRational::from_integer(2.into())
            } else {
                BigRational::zero()
            };
            let target = T::from_rational(&target);
            rows.push(SrwLimitRow {
                n,
                vertex: g.label(y).to_string(),
                p: row[y].clone(),
                residual: row[y].clone() - target.clone(),
                target,
            });
        }
    }
    Ok(rows)
}
