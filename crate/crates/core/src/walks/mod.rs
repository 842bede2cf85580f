//! Vertex-NBRW and simple random walk: exact n-step distributions, limit
//! profiles, spectral-radius estimates, Monte Carlo simulation and the
//! uniform-irreducibility check.
//!
//! The vertex-NBRW distribution is obtained from the edge chain: start with
//! mass `1/deg(x)` on every oriented edge ending at `x`, push it forward `n`
//! times through `Q_E`, and collect the mass on edges ending at each `y`.

mod monte_carlo;
mod spectral;
mod srw;
mod uniform;

pub use monte_carlo::{monte_carlo_nbrw, total_variation, MonteCarloResult};
pub use spectral::{
    cesaro_root_estimate, qe_operator_norm, root_test_estimate, spectral_radius_nbrw,
    spectral_radius_nbrw_source, spectral_radius_srw, spectral_radius_srw_source,
    spectral_radius_tree_ray, RootPoint, SpectralEstimate, SpectralMethod, CYCLE_PROBE_RADIUS,
};
pub use srw::{srw_limit_profile, srw_nstep, srw_trajectory, srw_trajectory_source, SrwLimitRow};
pub use uniform::{uniform_irreducibility_check, UniformIrreducibilityReport};

use num::rational::BigRational;
use num::Zero;
use serde::Serialize;

use crate::edge_space::{analyze_structure, NbrwKernel, OrientedEdgeSpace};
use crate::error::{NbrwError, Result};
use crate::graph::{
    ball_source_within, bfs_distances, is_bipartite, GraphSource, Multigraph, Topology,
    VertexKey,
};
use crate::numeric::Weight;

/// Probability distribution over the vertices of a (possibly truncated) graph.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexDistribution<T> {
    pub labels: Vec<String>,
    pub values: Vec<T>,
}

impl<T: Weight> VertexDistribution<T> {
    pub fn get(&self, label: &str) -> Option<&T> {
        self.labels.iter().position(|l| l == label).map(|i| &self.values[i])
    }

    pub fn total(&self) -> T {
        self.values.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// `(label, value)` pairs with nonzero value.
    pub fn support(&self) -> Vec<(&str, &T)> {
        self.labels
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(l, v)| (l.as_str(), v))
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(Weight::to_float).collect()
    }
}

/// Initial edge distribution for a walk started at `x`.
fn start_on_edges<T: Weight>(space: &OrientedEdgeSpace, x: usize) -> Vec<T> {
    let mut mass = vec![T::zero(); space.len()];
    let share = T::from_ratio(1, space.degree(x) as u64);
    for &e in space.edges_into(x) {
        mass[e] = share.clone();
    }
    mass
}

/// Collapse an edge distribution onto terminal vertices.
fn collect_at_heads<T: Weight>(space: &OrientedEdgeSpace, mass: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); space.vertex_count()];
    for (e, m) in mass.iter().enumerate() {
        if !m.is_zero() {
            out[space.head(e)] += m.clone();
        }
    }
    out
}

fn kernel_for<G: Topology + ?Sized>(g: &G) -> Result<NbrwKernel> {
    NbrwKernel::build(OrientedEdgeSpace::build(g))
}

/// `q^(n)(x, y)` for `n = 0..=n_max`, for every target `y`; indexed `[n][i]`.
pub fn nbrw_trajectory<G: Topology + ?Sized, T: Weight>(
    g: &G,
    x: usize,
    n_max: usize,
    targets: &[usize],
) -> Result<Vec<Vec<T>>> {
    if x >= g.vertex_count() {
        return Err(NbrwError::UnknownVertex(x.to_string()));
    }
    let kernel = kernel_for(g)?;
    Ok(trajectory_on_kernel(&kernel, x, n_max, targets))
}

fn trajectory_on_kernel<T: Weight>(
    kernel: &NbrwKernel,
    x: usize,
    n_max: usize,
    targets: &[usize],
) -> Vec<Vec<T>> {
    let space = kernel.space();
    let weights = kernel.weights::<T>();
    let mut mass = start_on_edges::<T>(space, x);
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            mass = kernel.push_forward(&mass, &weights);
        }
        let row = targets
            .iter()
            .map(|&y| {
                space
                    .edges_into(y)
                    .iter()
                    .fold(T::zero(), |acc, &f| acc + mass[f].clone())
            })
            .collect();
        out.push(row);
    }
    out
}

/// Full distribution `y ↦ q^(n)(x, y)` on a finite graph.
pub fn nbrw_nstep<G: Topology + ?Sized, T: Weight>(
    g: &G,
    x: usize,
    n: usize,
) -> Result<VertexDistribution<T>> {
    if x >= g.vertex_count() {
        return Err(NbrwError::UnknownVertex(x.to_string()));
    }
    let kernel = kernel_for(g)?;
    let weights = kernel.weights::<T>();
    let mut mass = start_on_edges::<T>(kernel.space(), x);
    for _ in 0..n {
        mass = kernel.push_forward(&mass, &weights);
    }
    Ok(VertexDistribution {
        labels: (0..g.vertex_count()).map(|v| g.label(v).to_string()).collect(),
        values: collect_at_heads(kernel.space(), &mass),
    })
}

/// `q^(n)(x, ·)` evaluated from the dense matrix power `Q_E^n`:
/// `q^(n)(x, y) = (1/deg x) Σ_{e⁺ = x, f⁺ = y} q_E^(n)(e, f)`.
pub fn nbrw_nstep_matrix_power<G: Topology + ?Sized, T: Weight>(
    g: &G,
    x: usize,
    n: usize,
) -> Result<VertexDistribution<T>> {
    if x >= g.vertex_count() {
        return Err(NbrwError::UnknownVertex(x.to_string()));
    }
    let kernel = kernel_for(g)?;
    let power = kernel.matrix_power::<T>(n);
    let space = kernel.space();
    let inv_deg = T::from_ratio(1, space.degree(x) as u64);
    let values = (0..g.vertex_count())
        .map(|y| {
            let mut acc = T::zero();
            for &e in space.edges_into(x) {
                for &f in space.edges_into(y) {
                    acc += power[e][f].clone();
                }
            }
            acc * inv_deg.clone()
        })
        .collect();
    Ok(VertexDistribution {
        labels: (0..g.vertex_count()).map(|v| g.label(v).to_string()).collect(),
        values,
    })
}

/// BFS distance in a source, giving up beyond `limit`.
pub fn source_distance(
    src: &dyn GraphSource,
    x: &VertexKey,
    y: &VertexKey,
    limit: usize,
) -> Option<usize> {
    if x == y {
        return Some(0);
    }
    let mut seen = std::collections::HashSet::from([x.clone()]);
    let mut frontier = vec![x.clone()];
    for d in 1..=limit {
        let mut next = Vec::new();
        for v in &frontier {
            for (w, _) in src.neighbors(v) {
                if &w == y {
                    return Some(d);
                }
                if seen.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    None
}

/// Radius of the ball that holds every walk of length `<= n_max` from `x`
/// that ends at a target at distance `<= reach` from `x`.
pub(crate) fn exact_radius(n_max: usize, reach: usize) -> usize {
    n_max.min((n_max + reach).div_ceil(2)).max(1)
}

/// `q^(n)(x, y)` on an infinite source for `n = 0..=n_max`, indexed `[n][i]`.
///
/// Computed exactly on a finite ball: a walk of length `n` that ends at `y`
/// never leaves `B(x, ⌈(n + d(x, y))/2⌉)`.
pub fn nbrw_trajectory_source<T: Weight>(
    src: &dyn GraphSource,
    x: &VertexKey,
    targets: &[VertexKey],
    n_max: usize,
    max_vertices: usize,
) -> Result<Vec<Vec<T>>> {
    let reach = targets
        .iter()
        .map(|y| source_distance(src, x, y, n_max).unwrap_or(n_max))
        .max()
        .unwrap_or(0);
    let b = ball_source_within(src, x, exact_radius(n_max, reach), max_vertices)?;
    let ids: Vec<Option<usize>> = targets
        .iter()
        .map(|y| b.vertex_id(&src.label(y)))
        .collect();
    let present: Vec<usize> = ids.iter().flatten().copied().collect();
    let traj = nbrw_trajectory::<_, T>(&b, b.center(), n_max, &present)?;
    // targets outside the ball are unreachable within n_max steps
    Ok(traj
        .into_iter()
        .map(|row| {
            let mut it = row.into_iter();
            ids.iter()
                .map(|id| match id {
                    Some(_) => it.next().unwrap(),
                    None => T::zero(),
                })
                .collect()
        })
        .collect())
}

/// Full `q^(n)(x, ·)` on an infinite source, supported on `B(x, n)`.
pub fn nbrw_nstep_source<T: Weight>(
    src: &dyn GraphSource,
    x: &VertexKey,
    n: usize,
    max_vertices: usize,
) -> Result<VertexDistribution<T>> {
    let b = ball_source_within(src, x, n.max(1), max_vertices)?;
    nbrw_nstep(&b, b.center(), n)
}

/// Exact residue-class limits of `q^(n)(x, ·)` on a finite graph.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueLimits {
    /// Common period `P` of the edge chain (lcm over its classes).
    pub period: usize,
    /// `limits[r][y] = lim_k q^(kP + r)(x, y)`.
    #[serde(serialize_with = "serialize_rational_table")]
    pub limits: Vec<Vec<BigRational>>,
}

fn serialize_rational_table<S: serde::Serializer>(
    table: &[Vec<BigRational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(table.len()))?;
    for row in table {
        let r: Vec<String> = row.iter().map(Weight::render).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

/// Limits of `q^(n)(x, y)` along each residue class of `n` modulo the period.
///
/// Every class of the edge chain on a finite graph is closed (the counting
/// measure is invariant), and on a class `C` of period `d` the chain started
/// at `e` converges along `n ≡ r (mod d)` to `d/|C|` on the cyclic subclass
/// `r` steps ahead of `e`, and to 0 elsewhere.
pub fn nbrw_residue_limits(g: &Multigraph, x: usize) -> Result<ResidueLimits> {
    if x >= g.vertex_count() {
        return Err(NbrwError::UnknownVertex(x.to_string()));
    }
    let kernel = kernel_for(g)?;
    let s = analyze_structure(&kernel);
    let space = kernel.space();
    let period = s.common_period();
    let inv_deg = BigRational::from_ratio(1, g.degree(x) as u64);
    let mut limits = vec![vec![BigRational::zero(); g.vertex_count()]; period];
    for &e in space.edges_into(x) {
        let c = s.component_of[e];
        let d = s.component_periods[c].unwrap_or(1);
        let share = BigRational::from_ratio(d as u64, s.components[c].len() as u64) * &inv_deg;
        for &f in &s.components[c] {
            let offset = (s.cyclic_class[f] + d - s.cyclic_class[e]) % d;
            for (r, row) in limits.iter_mut().enumerate() {
                if r % d == offset {
                    row[space.head(f)] += &share;
                }
            }
        }
    }
    Ok(ResidueLimits { period, limits })
}

/// Closed-form targets from the limit theorem for finite graphs:
/// the Cesàro limit `deg(y)/|E|`, and for minimum degree 3 the pointwise
/// limit (`deg(y)/|E|`, or `2 deg(y)/|E|` on the parity class of `d(x, y)`
/// when the graph is bipartite).
#[derive(Clone, Debug)]
pub struct TheoremTargets {
    pub cesaro: Vec<BigRational>,
    pub bipartite: bool,
    pub min_degree: usize,
    distance_parity: Vec<usize>,
}

impl TheoremTargets {
    pub fn new(g: &Multigraph, x: usize) -> Self {
        let total = g.num_oriented_edges() as u64;
        let dist = bfs_distances(g, x);
        TheoremTargets {
            cesaro: (0..g.vertex_count())
                .map(|y| BigRational::from_ratio(g.degree(y) as u64, total))
                .collect(),
            bipartite: is_bipartite(g).is_bipartite(),
            min_degree: g.min_degree(),
            distance_parity: dist.iter().map(|d| d.unwrap_or(0) % 2).collect(),
        }
    }

    /// Pointwise limit along step `n`, when the graph has minimum degree 3.
    pub fn pointwise(&self, y: usize, n: usize) -> Option<BigRational> {
        if self.min_degree < 3 {
            return None;
        }
        if !self.bipartite {
            return Some(self.cesaro[y].clone());
        }
        Some(if n % 2 == self.distance_parity[y] {
            &self.cesaro[y] * BigRational::from_integer(2.into())
        } else {
            BigRational::zero()
        })
    }
}

/// One row of a limit profile.
#[derive(Clone, Debug, Serialize)]
pub struct LimitRow<T> {
    pub n: usize,
    pub vertex: String,
    pub q: T,
    /// `(q^(1) + … + q^(n)) / n`.
    pub cesaro: T,
    /// Residue-class limit of `q^(n)(x, y)` for this `n`.
    pub target: T,
    /// `q − target`.
    pub residual: T,
}

#[derive(Clone, Debug)]
pub struct LimitProfile<T> {
    pub from: String,
    pub period: usize,
    pub rows: Vec<LimitRow<T>>,
    pub cesaro_targets: Vec<BigRational>,
    pub residue_limits: ResidueLimits,
    pub theorem: TheoremTargets,
    /// First `n` at which the sup-norm change over one period drops below 1e-12.
    pub converged_at: Option<usize>,
}

impl<T: Weight> LimitProfile<T> {
    pub fn rows_at(&self, n: usize) -> impl Iterator<Item = &LimitRow<T>> {
        self.rows.iter().filter(move |r| r.n == n)
    }

    /// `max_y |cesaro(n_max, y) − deg(y)/|E||`.
    pub fn cesaro_max_residual(&self) -> f64 {
        let n_max = self.rows.last().map_or(0, |r| r.n);
        self.rows_at(n_max)
            .zip(&self.cesaro_targets)
            .map(|(r, t)| r.cesaro.abs_diff(&T::from_rational(t)))
            .fold(0.0, f64::max)
    }
}

/// Trajectories `q^(n)(x, y)` for `n = 1..=n_max` with Cesàro means and
/// residuals against the exact residue-class limits.
pub fn nbrw_limit_profile<T: Weight>(
    g: &Multigraph,
    x: usize,
    n_max: usize,
) -> Result<LimitProfile<T>> {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let traj = nbrw_trajectory::<_, T>(g, x, n_max, &all)?;
    let residue_limits = nbrw_residue_limits(g, x)?;
    let theorem = TheoremTargets::new(g, x);
    let period = residue_limits.period;
    let mut rows = Vec::with_capacity(n_max * all.len());
    let mut running = vec![T::zero(); all.len()];
    let mut converged_at = None;
    for n in 1..=n_max {
        for &y in &all {
            running[y] += traj[n][y].clone();
            let target = T::from_rational(&residue_limits.limits[n % period][y]);
            rows.push(LimitRow {
                n,
                vertex: g.label(y).to_string(),
                q: traj[n][y].clone(),
                cesaro: running[y].clone() / T::from_ratio(n as u64, 1),
                residual: traj[n][y].clone() - target.clone(),
                target,
            });
        }
        if converged_at.is_none() && n > period {
            let change = all
                .iter()
                .map(|&y| traj[n][y].abs_diff(&traj[n - period][y]))
                .fold(0.0, f64::max);
            if change < 1e-12 {
                converged_at = Some(n);
            }
        }
    }
    Ok(LimitProfile {
        from: g.label(x).to_string(),
        period,
        rows,
        cesaro_targets: theorem.cesaro.clone(),
        residue_limits,
        theorem,
        converged_at,
    })
}
