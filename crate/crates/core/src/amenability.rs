//! Isoperimetric evidence for amenability and its comparison with `ρ(Q)`.
//!
//! Nothing here decides amenability of an infinite graph. Finite searches give
//! upper bounds on `ι(X)` (witnessed by explicit sets) and an exact minimum
//! over a stated scope; the diagnostic only reports whether that evidence and
//! the spectral estimate are consistent with each other.

use std::collections::HashSet;

use num::rational::BigRational;
use num::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{NbrwError, Result};
use crate::graph::{ball_source_within, cycle_radius_at, BallView, GraphSource, Topology, VertexKey};
use crate::numeric::Weight;
use crate::walks::{
    spectral_radius_nbrw_source, spectral_radius_tree_ray, SpectralEstimate, CYCLE_PROBE_RADIUS,
};

/// `(Area(F), Vol(F))` for a vertex set of `g`.
///
/// `Vol` sums true degrees. `Area` is `Vol` minus the edge ends that stay in
/// `F`, so edges leaving a truncated ball are counted even though they are not
/// visible through `neighbors`.
pub fn area_vol<G: Topology + ?Sized>(g: &G, set: &[usize]) -> Result<(usize, usize)> {
    let mut member = vec![false; g.vertex_count()];
    for &v in set {
        if v >= g.vertex_count() {
            return Err(NbrwError::UnknownVertex(v.to_string()));
        }
        member[v] = true;
    }
    let mut vol = 0;
    let mut inside = 0;
    for v in (0..g.vertex_count()).filter(|&v| member[v]) {
        vol += g.degree(v);
        inside += 2 * g.loops(v);
        inside += g
            .neighbors(v)
            .iter()
            .filter(|&&(u, _)| member[u])
            .map(|&(_, m)| m)
            .sum::<usize>();
    }
    Ok((vol - inside, vol))
}

/// `(Area(F), Vol(F))` for a finite vertex set of an infinite source.
pub fn area_vol_source(src: &dyn GraphSource, set: &[VertexKey]) -> (usize, usize) {
    let member: std::collections::HashSet<&VertexKey> = set.iter().collect();
    let mut area = 0;
    let mut vol = 0;
    for v in &member {
        vol += src.degree(v);
        area += src
            .neighbors(v)
            .iter()
            .filter(|(u, _)| !member.contains(u))
            .map(|(_, m)| m)
            .sum::<usize>();
    }
    (area, vol)
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub vertices: Vec<String>,
    pub area: usize,
    pub vol: usize,
    /// `Area/Vol` as a reduced fraction.
    pub ratio: String,
    pub ratio_f64: f64,
}

impl Witness {
    fn new<G: Topology + ?Sized>(g: &G, set: &[usize], area: usize, vol: usize) -> Self {
        let r = BigRational::new(area.into(), vol.into());
        Witness {
            vertices: set.iter().map(|&v| g.label(v).to_string()).collect(),
            area,
            vol,
            ratio: r.render(),
            ratio_f64: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FolnerPoint {
    pub r: usize,
    pub vertices: usize,
    pub area: usize,
    pub vol: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoperimetricReport {
    /// What the exact minimum ranges over.
    pub scope: String,
    pub k: usize,
    /// `min Area(F)/Vol(F)` over the scope.
    pub lower_bound_exact: Option<String>,
    pub lower_bound_f64: Option<f64>,
    /// Best set of each size `1..=k`; each is an upper bound on `ι(X)`.
    pub upper_bounds: Vec<Witness>,
    pub folner_trend: Vec<FolnerPoint>,
    pub subsets_visited: usize,
}

/// Connected-subset search state (ESU enumeration).
struct Search<'a, G: Topology + ?Sized> {
    g: &'a G,
    k: usize,
    allowed: Vec<bool>,
    rank: Vec<usize>,
    member: Vec<bool>,
    budget: usize,
    visited: usize,
    /// Best `(area, vol, set)` per size.
    best: Vec<Option<(usize, usize, Vec<usize>)>>,
}

fn less(a: (usize, usize), b: (usize, usize)) -> bool {
    // a.0/a.1 < b.0/b.1
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

impl<G: Topology + ?Sized> Search<'_, G> {
    fn extend(
        &mut self,
        sub: &mut Vec<usize>,
        ext: Vec<usize>,
        root: usize,
        vol: usize,
        inside: usize,
    ) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(NbrwError::BudgetExceeded {
                budget: self.budget,
                what: "connected vertex subsets".into(),
            });
        }
        let size = sub.len();
        let area = vol - inside;
        let slot = &mut self.best[size - 1];
        if slot.as_ref().is_none_or(|b| less((area, vol), (b.0, b.1))) {
            *slot = Some((area, vol, sub.clone()));
        }
        if size == self.k {
            return Ok(());
        }
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            let mut next_ext = ext.clone();
            // exclusive neighbours of w: not in sub and not adjacent to sub
            for &(u, _) in self.g.neighbors(w) {
                if self.allowed[u]
                    && self.rank[u] > self.rank[root]
                    && !self.member[u]
                    && !next_ext.contains(&u)
                    && !ext.contains(&u)
                    && !self.g.neighbors(u).iter().any(|&(t, _)| self.member[t])
                {
                    next_ext.push(u);
                }
            }
            let added: usize = 2 * self.g.loops(w)
                + 2 * self
                    .g
                    .neighbors(w)
                    .iter()
                    .filter(|&&(u, _)| self.member[u])
                    .map(|&(_, m)| m)
                    .sum::<usize>();
            self.member[w] = true;
            sub.push(w);
            let r = self.extend(sub, next_ext, root, vol + self.g.degree(w), inside + added);
            sub.pop();
            self.member[w] = false;
            r?;
        }
        Ok(())
    }
}

/// Exact `min Area(F)/Vol(F)` over connected `F` with `|F| <= k`.
///
/// Restricting to connected sets loses nothing: if `F` splits into components
/// `F_1, …, F_m` with no edges between them, then `Area(F) = Σ Area(F_i)` and
/// `Vol(F) = Σ Vol(F_i)`, so `Area(F)/Vol(F)` is a mediant of the component
/// ratios and is at least their minimum.
///
/// With `anchor`, only sets containing that vertex are enumerated (enough for
/// a vertex-transitive graph). `allowed` limits the search to vertices whose
/// incidences are all present, e.g. the interior of a ball. The search stops
/// with `BudgetExceeded` after `budget` subsets.
pub fn iota_bruteforce<G: Topology + ?Sized>(
    g: &G,
    k: usize,
    anchor: Option<usize>,
    allowed: Option<&[bool]>,
    budget: usize,
) -> Result<IsoperimetricReport> {
    if k == 0 {
        return Err(NbrwError::BadParams("k must be at least 1".into()));
    }
    let n = g.vertex_count();
    let allowed = allowed.map_or_else(|| vec![true; n], <[bool]>::to_vec);
    let mut rank: Vec<usize> = (0..n).map(|v| v + 1).collect();
    if let Some(a) = anchor {
        if a >= n {
            return Err(NbrwError::UnknownVertex(a.to_string()));
        }
        rank[a] = 0;
    }
    let mut s = Search {
        g,
        k,
        allowed,
        rank,
        member: vec![false; n],
        budget,
        visited: 0,
        best: vec![None; k],
    };
    let roots: Vec<usize> = match anchor {
        Some(a) => vec![a],
        None => (0..n).filter(|&v| s.allowed[v]).collect(),
    };
    for v in roots {
        let ext: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&(u, _)| u)
            .filter(|&u| s.allowed[u] && s.rank[u] > s.rank[v])
            .collect();
        s.member[v] = true;
        let r = s.extend(&mut vec![v], ext, v, g.degree(v), 2 * g.loops(v));
        s.member[v] = false;
        r?;
    }
    let upper_bounds: Vec<Witness> = s
        .best
        .iter()
        .flatten()
        .map(|(a, v, set)| Witness::new(g, set, *a, *v))
        .collect();
    let min = s
        .best
        .iter()
        .flatten()
        .map(|(a, v, _)| (*a, *v))
        .reduce(|x, y| if less(y, x) { y } else { x });
    let min = min.map(|(a, v)| BigRational::new(a.into(), v.into()));
    Ok(IsoperimetricReport {
        scope: match anchor {
            Some(a) => format!("connected sets of size <= {k} containing {}", g.label(a)),
            None => format!("connected sets of size <= {k}"),
        },
        k,
        lower_bound_f64: min.as_ref().and_then(ToPrimitive::to_f64),
        lower_bound_exact: min.as_ref().map(Weight::render),
        upper_bounds,
        folner_trend: Vec::new(),
        subsets_visited: s.visited,
    })
}

/// `ι` search on a ball of an infinite source: sets of size `<= k` containing
/// the center when the source is vertex-transitive, otherwise all connected
/// sets in the interior of `B(x, k)`.
pub fn iota_source(
    src: &dyn GraphSource,
    x: &VertexKey,
    k: usize,
    budget: usize,
) -> Result<IsoperimetricReport> {
    let radius = k.max(1);
    let b = ball_source_within(src, x, radius, budget)?;
    if src.is_vertex_transitive() {
        let mut rep = iota_bruteforce(&b, k, Some(b.center()), None, budget)?;
        rep.scope = format!("{} (vertex-transitive source)", rep.scope);
        Ok(rep)
    } else {
        let interior: Vec<bool> = (0..b.vertex_count())
            .map(|v| b.distance_from_center(v) < radius)
            .collect();
        let mut rep = iota_bruteforce(&b, k, None, Some(&interior), budget)?;
        rep.scope = format!("{} inside B({}, {})", rep.scope, src.label(x), radius - 1);
        Ok(rep)
    }
}

fn folner_on_ball(b: &BallView, r_max: usize) -> Vec<FolnerPoint> {
    let mut out = Vec::with_capacity(r_max + 1);
    let mut vertices = 0;
    let mut vol = 0;
    let mut inside = 0;
    for r in 0..=r_max {
        for v in b.sphere(r) {
            vertices += 1;
            vol += b.degree(v);
            inside += 2 * b.loops(v);
            // edges to vertices already in B(x, r), counted from both ends
            inside += 2 * b
                .neighbors(v)
                .iter()
                .filter(|&&(u, _)| b.distance_from_center(u) < r || (b.distance_from_center(u) == r && u < v))
                .map(|&(_, m)| m)
                .sum::<usize>();
        }
        let area = vol - inside;
        out.push(FolnerPoint {
            r,
            vertices,
            area,
            vol,
            ratio: area as f64 / vol as f64,
        });
    }
    out
}

/// `Area(B(x, r))/Vol(B(x, r))` for `r = 0..=r_max`.
pub fn folner_trend(
    src: &dyn GraphSource,
    x: &VertexKey,
    r_max: usize,
    max_vertices: usize,
) -> Result<Vec<FolnerPoint>> {
    let b = ball_source_within(src, x, r_max, max_vertices)?;
    Ok(folner_on_ball(&b, r_max))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Prerequisite {
    /// Some cycle lies within `radius` of the probed vertex.
    Verified { radius: usize, scope: String },
    Unverified { note: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ConsistentAmenable,
    ConsistentNonamenable,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct AmenabilityDiagnostic {
    pub source: String,
    pub from: String,
    pub degree_bound: usize,
    pub prerequisite: Prerequisite,
    pub rho_estimate: SpectralEstimate,
    pub iota_report: IsoperimetricReport,
    pub verdict: Verdict,
    /// Which way the evidence points, independent of the prerequisite.
    pub evidence: String,
    pub notes: Vec<String>,
}

/// `ρ` estimate at or above this reads as "near 1".
pub const RHO_NEAR_ONE: f64 = 0.95;
/// Følner ratio of the largest ball below this reads as "trending to 0".
pub const FOLNER_SMALL: f64 = 0.1;

/// Largest `r <= r_cap` with `|B(x, r)| <= max_vertices`, found by one BFS.
pub fn fitting_radius(
    src: &dyn GraphSource,
    x: &VertexKey,
    r_cap: usize,
    max_vertices: usize,
) -> usize {
    let mut seen: HashSet<VertexKey> = HashSet::from([x.clone()]);
    let mut frontier = vec![x.clone()];
    for r in 1..=r_cap {
        let mut next = Vec::new();
        for v in &frontier {
            for (w, _) in src.neighbors(v) {
                if seen.insert(w.clone()) {
                    if seen.len() > max_vertices {
                        return r - 1;
                    }
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    r_cap
}

/// Collects `ρ(Q)`, isoperimetric and Følner evidence for an infinite source.
///
/// When no cycle is found near `x` the dense-cycle hypothesis is unverified:
/// the verdict is `Inconclusive` and the evidence is still reported. On a
/// source without closed non-backtracking walks, `ρ(Q)` is read along a
/// geodesic ray instead of from return probabilities.
pub fn diagnose(
    src: &dyn GraphSource,
    x: &VertexKey,
    n_max: usize,
    r_max: usize,
    k: usize,
    budget: usize,
) -> Result<AmenabilityDiagnostic> {
    let m = src.degree_bound();
    let mut notes = Vec::new();
    let probe = ball_source_within(src, x, CYCLE_PROBE_RADIUS, budget)?;
    let prerequisite = match cycle_radius_at(&probe, probe.center()) {
        Some(radius) => Prerequisite::Verified {
            radius,
            scope: if src.is_vertex_transitive() {
                "every vertex (vertex-transitive source)".into()
            } else {
                format!("probed at {} only", src.label(x))
            },
        },
        None => Prerequisite::Unverified {
            note: format!(
                "no cycle within distance {} of {}; the ρ(Q) criterion needs dense small cycles and fails for trees",
                CYCLE_PROBE_RADIUS,
                src.label(x)
            ),
        },
    };

    let r_fit = fitting_radius(src, x, n_max.div_ceil(2).max(1), budget);
    let n_used = n_max.min(2 * r_fit);
    if n_used < n_max {
        notes.push(format!(
            "return probabilities computed for n <= {n_used} only: larger balls exceed the budget of {budget} vertices"
        ));
    }
    let rho = spectral_radius_nbrw_source(src, x, x, n_used, budget);
    let rho_estimate = match rho {
        Ok(est) => est,
        Err(NbrwError::AllZero) => {
            let n_ray = n_max.min(r_fit).max(2);
            notes.push(format!(
                "q^(n)(x, x) vanishes for all n <= {n_used}; ρ(Q) read along a geodesic ray of length {n_ray}"
            ));
            spectral_radius_tree_ray(src, x, n_ray, budget)?
        }
        Err(e) => return Err(e),
    };

    let mut iota_report = iota_source(src, x, k, budget)?;
    let r_trend = r_max.min(fitting_radius(src, x, r_max.max(1), budget));
    if r_trend < r_max {
        notes.push(format!(
            "ball ratios computed for r <= {r_trend} only: larger balls exceed the budget of {budget} vertices"
        ));
    }
    iota_report.folner_trend = folner_trend(src, x, r_trend, budget)?;

    let last_folner = iota_report.folner_trend.last().map_or(1.0, |p| p.ratio);
    let min_folner = iota_report
        .folner_trend
        .iter()
        .map(|p| p.ratio)
        .fold(f64::INFINITY, f64::min);
    let iota_positive = iota_report
        .lower_bound_exact
        .as_deref()
        .and_then(crate::numeric::parse_rational)
        .is_some_and(|r| !r.is_zero());

    let amenable_side = rho_estimate.value >= RHO_NEAR_ONE && last_folner < FOLNER_SMALL;
    let nonamenable_side =
        rho_estimate.value < RHO_NEAR_ONE && iota_positive && min_folner >= FOLNER_SMALL;
    let evidence = if amenable_side {
        "amenable: ρ(Q) estimate near 1 and ball boundary ratios small (supports only consistency, not a proof)"
    } else if nonamenable_side {
        "nonamenable: ρ(Q) estimate below 1, positive isoperimetric minimum on the searched scope, ball ratios bounded below"
    } else {
        "mixed: spectral and isoperimetric evidence disagree or are not yet decisive"
    }
    .to_string();
    let verified = matches!(prerequisite, Prerequisite::Verified { .. });
    let verdict = match (verified, amenable_side, nonamenable_side) {
        (true, true, _) => Verdict::ConsistentAmenable,
        (true, _, true) => Verdict::ConsistentNonamenable,
        _ => Verdict::Inconclusive,
    };
    if !verified {
        notes.push("verdict withheld: dense small cycles unverified".into());
    }
    Ok(AmenabilityDiagnostic {
        source: src.name(),
        from: src.label(x),
        degree_bound: m,
        prerequisite,
        rho_estimate,
        iota_report,
        verdict,
        evidence,
        notes,
    })
}
