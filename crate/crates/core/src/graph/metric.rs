use std::collections::VecDeque;

use super::Topology;
use crate::error::{NbrwError, Result};

/// BFS distances from `x`; `None` for vertices not reachable inside the view.
pub fn bfs_distances<G: Topology + ?Sized>(g: &G, x: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    if x >= dist.len() {
        return dist;
    }
    dist[x] = Some(0);
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &(u, _) in g.neighbors(v) {
            if dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

pub fn distance<G: Topology + ?Sized>(g: &G, x: usize, y: usize) -> Result<usize> {
    let n = g.vertex_count();
    for v in [x, y] {
        if v >= n {
            return Err(NbrwError::UnknownVertex(v.to_string()));
        }
    }
    bfs_distances(g, x)[y].ok_or_else(|| {
        NbrwError::Disconnected(format!("{} is unreachable from {}", g.label(y), g.label(x)))
    })
}

/// Result of a bipartiteness test, with a witness either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    /// Proper 2-colouring, indexed by vertex.
    Bipartite { coloring: Vec<u8> },
    /// Closed walk of odd length, as a vertex sequence with first == last.
    OddCycle { walk: Vec<usize> },
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Bipartite { .. })
    }
}

pub fn is_bipartite<G: Topology + ?Sized>(g: &G) -> Bipartition {
    let n = g.vertex_count();
    if let Some(v) = (0..n).find(|&v| g.loops(v) > 0) {
        return Bipartition::OddCycle { walk: vec![v, v] };
    }
    let mut color: Vec<Option<u8>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for &(u, _) in g.neighbors(v) {
                match color[u] {
                    None => {
                        color[u] = Some(1 - c);
                        parent[u] = v;
                        queue.push_back(u);
                    }
                    Some(cu) if cu == c => {
                        return Bipartition::OddCycle {
                            walk: odd_walk(&parent, v, u),
                        }
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Bipartition::Bipartite {
        coloring: color.into_iter().map(|c| c.unwrap_or(0)).collect(),
    }
}

/// Closes the BFS-tree paths to `v` and `u` through the edge `v - u`.
fn odd_walk(parent: &[usize], v: usize, u: usize) -> Vec<usize> {
    let path_to_root = |mut w: usize| {
        let mut p = vec![w];
        while parent[w] != usize::MAX {
            w = parent[w];
            p.push(w);
        }
        p
    };
    let pv = path_to_root(v);
    let pu = path_to_root(u);
    // strip the common tail
    let mut i = pv.len();
    let mut j = pu.len();
    while i > 1 && j > 1 && pv[i - 2] == pu[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut walk: Vec<usize> = pv[..i].to_vec();
    walk.extend(pu[..j - 1].iter().rev());
    walk.push(v);
    walk
}

/// Smallest `R` such that every ball `B(x, R)` contains a cycle, or `None`
/// if some ball never does (the graph is a tree).
///
/// Loops are cycles of length 1 and parallel pairs cycles of length 2. A ball
/// is connected, so it contains a cycle iff it has at least as many induced
/// edges as vertices.
pub fn small_cycle_radius<G: Topology + ?Sized>(g: &G) -> Option<usize> {
    let mut worst = 0;
    for x in 0..g.vertex_count() {
        worst = worst.max(cycle_radius_at(g, x)?);
    }
    Some(worst)
}

/// Smallest `R` such that `B(x, R)` (within the view) contains a cycle.
pub(crate) fn cycle_radius_at<G: Topology + ?Sized>(g: &G, x: usize) -> Option<usize> {
    let dist = bfs_distances(g, x);
    let max_d = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut vertices_at = vec![0usize; max_d + 1];
    let mut edges_at = vec![0usize; max_d + 1];
    for v in 0..g.vertex_count() {
        let Some(dv) = dist[v] else { continue };
        vertices_at[dv] += 1;
        edges_at[dv] += g.loops(v);
        for &(u, m) in g.neighbors(v) {
            if let Some(du) = dist[u] {
                if u > v {
                    edges_at[dv.max(du)] += m;
                }
            }
        }
    }
    let (mut nv, mut ne) = (0, 0);
    for r in 0..=max_d {
        nv += vertices_at[r];
        ne += edges_at[r];
        if ne >= nv {
            return Some(r);
        }
    }
    None
}
