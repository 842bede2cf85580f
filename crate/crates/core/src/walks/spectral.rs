//! Spectral-radius estimators.
//!
//! `ρ` is a limsup of `a_n^(1/n)`. The point estimate used throughout is the
//! maximum of `a_n^(1/n)` over the last `⌈n_max/4⌉` admissible `n`, where
//! admissible means `a_n > 0`; the admissible `n` of a periodic walk fall in
//! one residue class, which is reported alongside.

use num::integer::gcd;
use num::rational::BigRational;
use num::Zero;
use serde::Serialize;

use super::{nbrw_trajectory, nbrw_trajectory_source, srw_trajectory_source};
use crate::edge_space::NbrwKernel;
use crate::error::{NbrwError, Result};
use crate::graph::{
    ball_source_within, small_cycle_radius, GraphSource, Multigraph, Topology, VertexKey,
};
use crate::numeric::{exact_rational_root, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralMethod {
    /// Value known from the eigenstructure (finite graphs), or computed by
    /// power iteration on a symmetric operator.
    ExactEigen,
    RootTest,
    /// Root test applied to sums over one full period.
    CesaroRoot,
    /// Root of ratios along a subsequence, normalized by its first term.
    SubsequenceRoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootPoint {
    pub n: usize,
    pub root: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralEstimate {
    pub value: f64,
    /// Exact value as a rational string, when one is known.
    pub exact: Option<String>,
    pub method: SpectralMethod,
    pub n_used: usize,
    pub residue_class: Option<usize>,
    pub period: Option<usize>,
    /// True when `value` is only a certified lower bound.
    pub lower_bound: bool,
    pub sequence: Vec<RootPoint>,
    pub monotonicity_note: String,
    pub warnings: Vec<String>,
}

/// Root test on `ln a_n` for `n = 0..`; zero terms are `-inf`.
pub fn root_test_estimate(log_terms: &[f64]) -> Option<SpectralEstimate> {
    let n_max = log_terms.len().saturating_sub(1);
    let admissible: Vec<usize> = (1..log_terms.len())
        .filter(|&n| log_terms[n].is_finite())
        .collect();
    let &first = admissible.first()?;
    let step = admissible.iter().fold(0, |g, &n| gcd(g, n - first));
    let window = n_max.div_ceil(4).max(1);
    let tail = &admissible[admissible.len().saturating_sub(window)..];
    let sequence: Vec<RootPoint> = admissible
        .iter()
        .map(|&n| RootPoint {
            n,
            root: (log_terms[n] / n as f64).exp(),
        })
        .collect();
    let tail_points = &sequence[sequence.len() - tail.len()..];
    let best = tail_points
        .iter()
        .copied()
        .fold(RootPoint { n: 0, root: 0.0 }, |a, b| if b.root > a.root { b } else { a });
    Some(SpectralEstimate {
        value: best.root,
        exact: None,
        method: SpectralMethod::RootTest,
        n_used: best.n,
        residue_class: (step > 1).then_some(first % step),
        period: (step > 0).then_some(step),
        lower_bound: false,
        monotonicity_note: monotonicity(tail_points),
        sequence,
        warnings: Vec::new(),
    })
}

fn monotonicity(points: &[RootPoint]) -> String {
    let up = points.windows(2).all(|w| w[1].root >= w[0].root);
    let down = points.windows(2).all(|w| w[1].root <= w[0].root);
    match (up, down) {
        (true, true) => "constant over the estimation window".into(),
        (true, false) => "non-decreasing over the estimation window".into(),
        (false, true) => "non-increasing over the estimation window".into(),
        _ => "not monotone over the estimation window".into(),
    }
}

/// Root test on window sums `a_{n-p+1} + … + a_n` over one period `p`, which
/// removes the zeros of a periodic sequence without locating its residue class.
pub fn cesaro_root_estimate(log_terms: &[f64], period: usize) -> Option<SpectralEstimate> {
    let p = period.max(1);
    let mut sums = vec![f64::NEG_INFINITY; log_terms.len()];
    for n in p..log_terms.len() {
        sums[n] = log_sum_exp(&log_terms[n + 1 - p..=n]);
    }
    let mut est = root_test_estimate(&sums)?;
    est.method = SpectralMethod::CesaroRoot;
    est.residue_class = None;
    est.period = Some(p);
    Some(est)
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// `ρ(Q)` on a finite graph. Finite graphs with minimum degree 2 have dense
/// small cycles and a doubly stochastic `Q_E`, so `ρ(Q) = 1`; the root-test
/// sequence of `q^(n)(x, y)` is returned for inspection.
pub fn spectral_radius_nbrw(
    g: &Multigraph,
    x: usize,
    y: usize,
    n_max: usize,
) -> Result<SpectralEstimate> {
    if small_cycle_radius(g).is_none() {
        return Err(NbrwError::DenseCyclesUnverified("finite graph is a tree".into()));
    }
    let traj = nbrw_trajectory::<_, f64>(g, x, n_max, &[y])?;
    let logs: Vec<f64> = traj.iter().map(|r| r[0].ln()).collect();
    let mut est = root_test_estimate(&logs).unwrap_or_else(|| empty_estimate(n_max));
    est.value = 1.0;
    est.exact = Some("1".into());
    est.method = SpectralMethod::ExactEigen;
    est.lower_bound = false;
    Ok(est)
}

fn empty_estimate(n_max: usize) -> SpectralEstimate {
    SpectralEstimate {
        value: 0.0,
        exact: None,
        method: SpectralMethod::RootTest,
        n_used: n_max,
        residue_class: None,
        period: None,
        lower_bound: true,
        sequence: Vec::new(),
        monotonicity_note: "no positive term".into(),
        warnings: Vec::new(),
    }
}

/// Radius of the ball searched for a cycle before declaring dense small
/// cycles unverified.
pub const CYCLE_PROBE_RADIUS: usize = 8;

/// Root-test lower bound for `ρ(Q)` on an infinite source.
///
/// Since `q^(n)(x, y) ≤ C ρ^n`, each root is a lower-bound estimate. When no
/// cycle is found near `x` the estimate is still returned with a warning,
/// because `ρ(Q)` need not be independent of `(x, y)` without dense cycles.
pub fn spectral_radius_nbrw_source(
    src: &dyn GraphSource,
    x: &VertexKey,
    y: &VertexKey,
    n_max: usize,
    max_vertices: usize,
) -> Result<SpectralEstimate> {
    let mut warnings = Vec::new();
    let probe = ball_source_within(src, x, CYCLE_PROBE_RADIUS.min(n_max.max(1)), max_vertices)?;
    if crate::graph::cycle_radius_at(&probe, probe.center()).is_none() {
        warnings.push(
            NbrwError::DenseCyclesUnverified(format!(
                "no cycle within distance {} of {}",
                probe.radius(),
                src.label(x)
            ))
            .to_string(),
        );
    }
    let traj = nbrw_trajectory_source::<f64>(src, x, std::slice::from_ref(y), n_max, max_vertices)?;
    let logs: Vec<f64> = traj.iter().map(|r| r[0].ln()).collect();
    let mut est = root_test_estimate(&logs).ok_or(NbrwError::AllZero)?;
    est.lower_bound = true;
    est.warnings = warnings;
    Ok(est)
}

/// `ρ(Q)` on a tree-like source, read along a geodesic ray `x = y_0, y_1, …`.
///
/// On a tree `q^(n)(x, y_n)` is the weight of the unique path, so the
/// normalized root `(a_n / a_1)^(1/(n-1))` is computed in exact arithmetic and
/// reported exactly when it is rational.
pub fn spectral_radius_tree_ray(
    src: &dyn GraphSource,
    x: &VertexKey,
    n_max: usize,
    max_vertices: usize,
) -> Result<SpectralEstimate> {
    if n_max < 2 {
        return Err(NbrwError::BadParams("tree ray estimate needs n_max >= 2".into()));
    }
    let b = ball_source_within(src, x, n_max, max_vertices)?;
    // canonical ray: from each vertex step to its first neighbour one level further out
    let mut ray = vec![b.center()];
    for _ in 0..n_max {
        let v = *ray.last().unwrap();
        let next = b
            .neighbors(v)
            .iter()
            .map(|&(u, _)| u)
            .find(|&u| b.distance_from_center(u) == b.distance_from_center(v) + 1)
            .ok_or_else(|| NbrwError::BadParams("ray left the ball".into()))?;
        ray.push(next);
    }
    let traj = nbrw_trajectory::<_, BigRational>(&b, b.center(), n_max, &ray)?;
    let terms: Vec<BigRational> = (0..=n_max).map(|n| traj[n][n].clone()).collect();
    if terms[1..].iter().any(Zero::is_zero) {
        return Err(NbrwError::BadParams(
            "source is not a tree along the ray: geodesic probability vanished".into(),
        ));
    }
    let mut sequence = Vec::new();
    let mut exact = None;
    let mut value = 0.0;
    for n in 2..=n_max {
        let ratio = &terms[n] / &terms[1];
        let k = (n - 1) as u32;
        let root_exact = exact_rational_root(&ratio, k);
        let root = match &root_exact {
            Some(r) => Weight::to_float(r),
            None => (Weight::ln(&ratio) / k as f64).exp(),
        };
        sequence.push(RootPoint { n, root });
        if n == n_max {
            value = root;
            exact = root_exact.map(|r| r.render());
        }
    }
    Ok(SpectralEstimate {
        value,
        exact,
        method: SpectralMethod::SubsequenceRoot,
        n_used: n_max,
        residue_class: None,
        period: None,
        lower_bound: false,
        monotonicity_note: monotonicity(&sequence),
        sequence,
        warnings: vec![format!(
            "along the geodesic ray {} -> {}",
            b.label(ray[0]),
            b.label(ray[n_max])
        )],
    })
}

/// `‖P‖ = ρ(P)` on a finite graph by power iteration on the symmetrization
/// `S = D^{1/2} P D^{-1/2}` (self-adjoint since SRW is reversible for `deg`);
/// the top eigenvalue of `S²` is `ρ(P)²`.
pub fn spectral_radius_srw(g: &Multigraph, max_iters: usize) -> Result<SpectralEstimate> {
    let n = g.vertex_count();
    let sqrt_deg: Vec<f64> = (0..n).map(|v| (g.degree(v) as f64).sqrt()).collect();
    let apply = |v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|x| {
                let mut acc = 2.0 * g.loops(x) as f64 * v[x] / g.degree(x) as f64;
                for &(y, m) in g.neighbors(x) {
                    acc += m as f64 * v[y] / (sqrt_deg[x] * sqrt_deg[y]);
                }
                acc
            })
            .collect()
    };
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i % 7) as f64 / 10.0).collect();
    normalize(&mut v);
    let mut lambda = 0.0;
    for it in 0..max_iters {
        let mut w = apply(&apply(&v));
        let rq: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        normalize(&mut w);
        v = w;
        if (rq - lambda).abs() < 1e-15 && it > 2 {
            return Ok(SpectralEstimate {
                value: rq.sqrt(),
                exact: None,
                method: SpectralMethod::ExactEigen,
                n_used: it + 1,
                residue_class: None,
                period: None,
                lower_bound: false,
                sequence: Vec::new(),
                monotonicity_note: "power iteration on S² with S = D^1/2 P D^-1/2".into(),
                warnings: Vec::new(),
            });
        }
        lambda = rq;
    }
    Err(NbrwError::NoConvergence {
        iterations: max_iters,
    })
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v {
        *x /= norm;
    }
}

/// Root test on the return probabilities `p^(n)(x, x)` of an infinite source.
/// For SRW `p^(n)(x, x) ≤ ρ(P)^n`, so every root is a certified lower bound.
pub fn spectral_radius_srw_source(
    src: &dyn GraphSource,
    x: &VertexKey,
    n_max: usize,
    max_vertices: usize,
) -> Result<SpectralEstimate> {
    let traj = srw_trajectory_source::<f64>(src, x, x, n_max, max_vertices)?;
    let logs: Vec<f64> = traj.iter().map(|p| p.ln()).collect();
    let mut est = root_test_estimate(&logs).ok_or(NbrwError::AllZero)?;
    est.lower_bound = true;
    Ok(est)
}

/// `‖Q_E‖` on `ℓ²(E)` with counting measure, by power iteration on `Q_Eᵀ Q_E`.
pub fn qe_operator_norm(kernel: &NbrwKernel, max_iters: usize) -> Result<f64> {
    let weights = kernel.weights::<f64>();
    let mut v: Vec<f64> = (0..kernel.len()).map(|i| 1.0 + (i % 7) as f64 / 10.0).collect();
    normalize(&mut v);
    let mut last = f64::NAN;
    for it in 0..max_iters {
        let qv = kernel.apply(&v, &weights);
        let mut w = kernel.apply_transpose(&qv, &weights);
        let rq: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        normalize(&mut w);
        v = w;
        if it > 2 && (rq - last).abs() < 1e-15 {
            return Ok(rq.sqrt());
        }
        last = rq;
    }
    Err(NbrwError::NoConvergence {
        iterations: max_iters,
    })
}
