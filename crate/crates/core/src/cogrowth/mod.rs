//! Cogrowth of a multigraph: non-backtracking path counts from `x`, read off
//! the universal covering tree without building it.
//!
//! Paths of length `n` from `x` are in bijection with the sphere of radius `n`
//! around the root of the covering tree. Both the ordinary (equidistributed)
//! and the NBRW-weighted sphere measures are computed here by a dynamic
//! program over edge ends that is independent of the `walks` module.

mod functional;
mod series;

pub use functional::{functional_equation_check, green_series, FunctionalEquationReport};
pub use series::PowerSeries;

use std::fmt::Debug;

use num::bigint::BigUint;
use num::Zero;
use serde::{Serialize, Serializer};

use crate::error::{NbrwError, Result};
use crate::graph::{ball_source_within, GraphSource, Topology, VertexKey};
use crate::numeric::Weight;
use crate::walks::{root_test_estimate, SpectralEstimate, SpectralMethod};

/// Integer type used for path counts.
pub trait CountInt: Clone + Debug + PartialEq + Zero + Send + Sync {
    fn checked_plus(&self, other: &Self) -> Option<Self>;
    fn minus(&self, other: &Self) -> Self;
    fn to_biguint(&self) -> BigUint;
}

impl CountInt for u64 {
    fn checked_plus(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl CountInt for BigUint {
    fn checked_plus(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn to_biguint(&self) -> BigUint {
        self.clone()
    }
}

/// Edge ends at each vertex. Slot `i` at `v` leads to `target[v][i]` and
/// arrives there in slot `back[v][i]`; the reverse of that edge leaves from
/// the arrival slot.
struct HalfEdges {
    target: Vec<Vec<usize>>,
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl HalfEdges {
    fn build<G: Topology + ?Sized>(g: &G) -> Self {
        let n = g.vertex_count();
        let mut target = vec![Vec::new(); n];
        let mut back = vec![Vec::new(); n];
        for v in 0..n {
            for &(u, m) in g.neighbors(v) {
                if u <= v {
                    continue;
                }
                for _ in 0..m {
                    let (iv, iu) = (target[v].len(), target[u].len());
                    target[v].push(u);
                    back[v].push(iu);
                    target[u].push(v);
                    back[u].push(iv);
                }
            }
            for _ in 0..g.loops(v) {
                let i = target[v].len();
                target[v].extend([v, v]);
                back[v].extend([i + 1, i]);
            }
        }
        HalfEdges {
            target,
            back,
            degree: (0..n).map(|v| g.degree(v)).collect(),
        }
    }

    /// `state[v][b]` is the value on paths that arrived at `v` through slot `b`.
    fn empty<V: Clone>(&self, zero: V) -> Vec<Vec<V>> {
        self.target.iter().map(|t| vec![zero.clone(); t.len()]).collect()
    }
}

/// Non-backtracking path counts from `x`: `counts[n][y]` paths of length `n`
/// end at `y`, `totals[n] = |S(x̃, n)|`.
#[derive(Clone, Debug)]
pub struct SphereCounts<I> {
    pub labels: Vec<String>,
    pub counts: Vec<Vec<I>>,
    pub totals: Vec<I>,
}

pub fn sphere_counts<G: Topology + ?Sized, I: CountInt + From<u8>>(
    g: &G,
    x: usize,
    n_max: usize,
) -> Result<SphereCounts<I>> {
    if x >= g.vertex_count() {
        return Err(NbrwError::UnknownVertex(x.to_string()));
    }
    let h = HalfEdges::build(g);
    let nv = g.vertex_count();
    let mut counts = Vec::with_capacity(n_max + 1);
    let mut totals = Vec::with_capacity(n_max + 1);
    let mut point = vec![I::zero(); nv];
    point[x] = I::from(1);
    counts.push(point);
    totals.push(I::from(1));

    let mut state = h.empty(I::zero());
    for n in 1..=n_max {
        let mut next = h.empty(I::zero());
        let overflow = || NbrwError::Overflow { step: n };
        if n == 1 {
            for (i, &u) in h.target[x].iter().enumerate() {
                let b = h.back[x][i];
                next[u][b] = next[u][b].checked_plus(&I::from(1)).ok_or_else(overflow)?;
            }
        } else {
            for v in 0..nv {
                let mut sum = I::zero();
                for c in &state[v] {
                    sum = sum.checked_plus(c).ok_or_else(overflow)?;
                }
                if sum.is_zero() {
                    continue;
                }
                for (i, &u) in h.target[v].iter().enumerate() {
                    // every arrival except the one through slot i may leave through i
                    let add = sum.minus(&state[v][i]);
                    let b = h.back[v][i];
                    next[u][b] = next[u][b].checked_plus(&add).ok_or_else(overflow)?;
                }
            }
        }
        state = next;
        let mut row = vec![I::zero(); nv];
        let mut total = I::zero();
        for v in 0..nv {
            for c in &state[v] {
                row[v] = row[v].checked_plus(c).ok_or(NbrwError::Overflow { step: n })?;
            }
            total = total.checked_plus(&row[v]).ok_or(NbrwError::Overflow { step: n })?;
        }
        counts.push(row);
        totals.push(total);
    }
    Ok(SphereCounts {
        labels: (0..nv).map(|v| g.label(v).to_string()).collect(),
        counts,
        totals,
    })
}

/// NBRW weight of the covering-tree sphere projected to each `y`:
/// `out[n][y] = ν_x(paths of length n ending at y)`, with `ν` the product of
/// `1/deg(x)` and `1/(deg − 1)` at each later vertex of the path.
fn weighted_sphere<G: Topology + ?Sized, T: Weight>(g: &G, x: usize, n_max: usize) -> Vec<Vec<T>> {
    let h = HalfEdges::build(g);
    let nv = g.vertex_count();
    let mut out = Vec::with_capacity(n_max + 1);
    let mut point = vec![T::zero(); nv];
    point[x] = T::one();
    out.push(point);
    let mut state = h.empty(T::zero());
    for n in 1..=n_max {
        let mut next = h.empty(T::zero());
        if n == 1 {
            let w = T::from_ratio(1, h.degree[x] as u64);
            for (i, &u) in h.target[x].iter().enumerate() {
                next[u][h.back[x][i]] += w.clone();
            }
        } else {
            for v in 0..nv {
                let sum = state[v].iter().cloned().fold(T::zero(), |a, b| a + b);
                if sum.is_zero() {
                    continue;
                }
                let share = T::from_ratio(1, h.degree[v] as u64 - 1);
                for (i, &u) in h.target[v].iter().enumerate() {
                    let add = (sum.clone() - state[v][i].clone()) * share.clone();
                    next[u][h.back[v][i]] += add;
                }
            }
        }
        state = next;
        out.push(
            state
                .iter()
                .map(|arr| arr.iter().cloned().fold(T::zero(), |a, b| a + b))
                .collect(),
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CogrowthMode {
    /// Equidistribution on the sphere.
    Ordinary,
    /// NBRW path probability on the sphere.
    Weighted,
}

/// `cog_n(x, y)` for every `y` and `n <= n_max`.
#[derive(Clone, Debug, Serialize)]
pub struct CogrowthTable<T: Weight> {
    pub from: String,
    pub mode: CogrowthMode,
    pub finite: bool,
    pub labels: Vec<String>,
    #[serde(serialize_with = "render_table")]
    pub rows: Vec<Vec<T>>,
    #[serde(serialize_with = "render_counts")]
    pub sphere_sizes: Vec<BigUint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CogrowthSeries<T: Weight> {
    pub from: String,
    pub to: String,
    pub mode: CogrowthMode,
    /// Whether the series comes from a finite graph (not a ball of a source).
    pub finite: bool,
    #[serde(serialize_with = "render_list")]
    pub coefficients: Vec<T>,
    #[serde(serialize_with = "render_counts")]
    pub sphere_sizes: Vec<BigUint>,
}

fn render_list<T: Weight, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Weight::render))
}

fn render_table<T: Weight, S: Serializer>(
    v: &[Vec<T>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(Weight::render).collect::<Vec<_>>()))
}

fn render_counts<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

pub fn cogrowth_table<G: Topology + ?Sized, T: Weight>(
    g: &G,
    x: usize,
    n_max: usize,
    mode: CogrowthMode,
    finite: bool,
) -> Result<CogrowthTable<T>> {
    let counts = sphere_counts::<_, BigUint>(g, x, n_max)?;
    let rows = match mode {
        CogrowthMode::Ordinary => counts
            .counts
            .iter()
            .zip(&counts.totals)
            .map(|(row, total)| row.iter().map(|c| T::from_big_ratio(c, total)).collect())
            .collect(),
        CogrowthMode::Weighted => weighted_sphere::<_, T>(g, x, n_max),
    };
    Ok(CogrowthTable {
        from: g.label(x).to_string(),
        mode,
        finite,
        labels: counts.labels,
        rows,
        sphere_sizes: counts.totals,
    })
}

pub fn cogrowth_series<G: Topology + ?Sized, T: Weight>(
    g: &G,
    x: usize,
    y: usize,
    n_max: usize,
    mode: CogrowthMode,
    finite: bool,
) -> Result<CogrowthSeries<T>> {
    if y >= g.vertex_count() {
        return Err(NbrwError::UnknownVertex(y.to_string()));
    }
    let table = cogrowth_table::<_, T>(g, x, n_max, mode, finite)?;
    Ok(CogrowthSeries {
        from: table.from,
        to: g.label(y).to_string(),
        mode,
        finite,
        coefficients: table.rows.into_iter().map(|r| r[y].clone()).collect(),
        sphere_sizes: table.sphere_sizes,
    })
}

/// Cogrowth series on an infinite source. The ball has radius `n_max`, so
/// sphere sizes are exact.
pub fn cogrowth_series_source<T: Weight>(
    src: &dyn GraphSource,
    x: &VertexKey,
    y: &VertexKey,
    n_max: usize,
    mode: CogrowthMode,
    max_vertices: usize,
) -> Result<CogrowthSeries<T>> {
    let b = ball_source_within(src, x, n_max.max(1), max_vertices)?;
    let coefficients_len = n_max + 1;
    match b.vertex_id(&src.label(y)) {
        Some(yid) => cogrowth_series(&b, b.center(), yid, n_max, mode, false),
        None => {
            // y is farther than n_max: every coefficient vanishes
            let counts = sphere_counts::<_, BigUint>(&b, b.center(), n_max)?;
            Ok(CogrowthSeries {
                from: src.label(x),
                to: src.label(y),
                mode,
                finite: false,
                coefficients: vec![T::zero(); coefficients_len],
                sphere_sizes: counts.totals,
            })
        }
    }
}

pub fn sphere_counts_source(
    src: &dyn GraphSource,
    x: &VertexKey,
    n_max: usize,
    max_vertices: usize,
) -> Result<SphereCounts<BigUint>> {
    let b = ball_source_within(src, x, n_max.max(1), max_vertices)?;
    sphere_counts(&b, b.center(), n_max)
}

/// Root-test estimate of `limsup cog_n(x, y)^(1/n)`.
///
/// On a finite graph the coefficients converge along residue classes to limits
/// not all zero, so the rate is exactly 1 and is reported as such; the root
/// sequence is attached either way.
pub fn cogrowth_rate<T: Weight>(series: &CogrowthSeries<T>) -> Result<SpectralEstimate> {
    let logs: Vec<f64> = series
        .coefficients
        .iter()
        .enumerate()
        .map(|(n, c)| if n == 0 { f64::NEG_INFINITY } else { c.ln() })
        .collect();
    let mut est = root_test_estimate(&logs).ok_or(NbrwError::AllZero)?;
    if series.finite {
        est.value = 1.0;
        est.exact = Some("1".into());
        est.method = SpectralMethod::ExactEigen;
    }
    Ok(est)
}
