use std::collections::HashMap;

use super::source::{GraphSource, VertexKey};
use super::Topology;
use crate::error::{NbrwError, Result};

/// Induced subgraph on `B(center, radius)`.
///
/// Vertex 0 is always the center and ids follow BFS order, so distances are
/// non-decreasing in the id. Degrees are those of the ambient graph; edges
/// leaving the ball are not visible through [`Topology::neighbors`].
#[derive(Clone, Debug)]
pub struct BallView {
    radius: usize,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<(usize, usize)>>,
    loops: Vec<usize>,
    degree: Vec<usize>,
    dist: Vec<usize>,
}

impl BallView {
    pub fn center(&self) -> usize {
        0
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn distance_from_center(&self, v: usize) -> usize {
        self.dist[v]
    }

    /// Vertices at distance exactly `radius`.
    pub fn boundary(&self) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&v| self.dist[v] == self.radius)
            .collect()
    }

    /// Vertices at distance exactly `r`.
    pub fn sphere(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.labels.len()).filter(move |&v| self.dist[v] == r)
    }

    /// Number of edges (loops included, with multiplicity) inside the ball.
    pub fn induced_edge_count(&self) -> usize {
        self.oriented_edge_count() / 2
    }

    /// Sub-ball of radius `r <= radius` around the same center.
    pub fn shrink(&self, r: usize) -> BallView {
        let keep = self.dist.partition_point(|&d| d <= r);
        let adj = self.adj[..keep]
            .iter()
            .map(|l| l.iter().copied().filter(|&(u, _)| u < keep).collect())
            .collect();
        let labels = self.labels[..keep].to_vec();
        let index = labels.iter().cloned().zip(0..).collect();
        BallView {
            radius: r.min(self.radius),
            labels,
            index,
            adj,
            loops: self.loops[..keep].to_vec(),
            degree: self.degree[..keep].to_vec(),
            dist: self.dist[..keep].to_vec(),
        }
    }
}

impl Topology for BallView {
    fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    fn vertex_id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    fn loops(&self, v: usize) -> usize {
        self.loops[v]
    }

    fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }
}

struct BallBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<(usize, usize)>>,
    loops: Vec<usize>,
    degree: Vec<usize>,
    dist: Vec<usize>,
}

impl BallBuilder {
    fn finish(mut self, radius: usize) -> BallView {
        for list in &mut self.adj {
            list.sort_unstable();
        }
        BallView {
            radius,
            labels: self.labels,
            index: self.index,
            adj: self.adj,
            loops: self.loops,
            degree: self.degree,
            dist: self.dist,
        }
    }
}

/// `B(x, radius)` in a finite graph.
pub fn ball<G: Topology + ?Sized>(g: &G, x: usize, radius: usize) -> Result<BallView> {
    if x >= g.vertex_count() {
        return Err(NbrwError::UnknownVertex(x.to_string()));
    }
    let mut local = HashMap::new();
    let mut order = vec![x];
    let mut dist = vec![0];
    local.insert(x, 0usize);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        let d = dist[head];
        head += 1;
        if d == radius {
            continue;
        }
        for &(u, _) in g.neighbors(v) {
            if let std::collections::hash_map::Entry::Vacant(e) = local.entry(u) {
                e.insert(order.len());
                order.push(u);
                dist.push(d + 1);
            }
        }
    }
    let labels: Vec<String> = order.iter().map(|&v| g.label(v).to_string()).collect();
    let index = labels.iter().cloned().zip(0..).collect();
    let adj = order
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter_map(|&(u, m)| local.get(&u).map(|&lu| (lu, m)))
                .collect()
        })
        .collect();
    let b = BallBuilder {
        labels,
        index,
        adj,
        loops: order.iter().map(|&v| g.loops(v)).collect(),
        degree: order.iter().map(|&v| g.degree(v)).collect(),
        dist,
    };
    Ok(b.finish(radius))
}

/// `B(x, radius)` in an infinite source.
pub fn ball_source(src: &dyn GraphSource, x: &VertexKey, radius: usize) -> Result<BallView> {
    ball_source_within(src, x, radius, usize::MAX)
}

/// Like [`ball_source`], failing with `BudgetExceeded` once the ball would hold
/// more than `max_vertices` vertices.
pub fn ball_source_within(
    src: &dyn GraphSource,
    x: &VertexKey,
    radius: usize,
    max_vertices: usize,
) -> Result<BallView> {
    let mut local: HashMap<VertexKey, usize> = HashMap::new();
    let mut keys = vec![x.clone()];
    let mut dist = vec![0usize];
    let mut nbrs: Vec<Vec<(VertexKey, usize)>> = Vec::new();
    local.insert(x.clone(), 0);
    let mut head = 0;
    while head < keys.len() {
        let v = keys[head].clone();
        let d = dist[head];
        head += 1;
        let list = src.neighbors(&v);
        if d < radius {
            for (w, _) in &list {
                if !local.contains_key(w) {
                    if keys.len() >= max_vertices {
                        return Err(NbrwError::BudgetExceeded {
                            budget: max_vertices,
                            what: format!("materializing a ball of radius {radius} in {}", src.name()),
                        });
                    }
                    local.insert(w.clone(), keys.len());
                    keys.push(w.clone());
                    dist.push(d + 1);
                }
            }
        }
        nbrs.push(list);
    }
    let mut adj = Vec::with_capacity(keys.len());
    let mut degree = Vec::with_capacity(keys.len());
    let mut loops = Vec::with_capacity(keys.len());
    for (v, list) in keys.iter().zip(&nbrs) {
        let l = src.loops(v);
        loops.push(l);
        degree.push(2 * l + list.iter().map(|(_, m)| m).sum::<usize>());
        let mut row: Vec<(usize, usize)> = Vec::new();
        for (w, m) in list {
            if let Some(&lw) = local.get(w) {
                match row.iter_mut().find(|(u, _)| *u == lw) {
                    Some(entry) => entry.1 += m,
                    None => row.push((lw, *m)),
                }
            }
        }
        adj.push(row);
    }
    let labels: Vec<String> = keys.iter().map(|k| src.label(k)).collect();
    let index = labels.iter().cloned().zip(0..).collect();
    let b = BallBuilder {
        labels,
        index,
        adj,
        loops,
        degree,
        dist,
    };
    Ok(b.finish(radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, GridZ2, RegularTree};

    #[test]
    fn unit_ball_of_k4_is_everything() {
        let g = complete(4).unwrap();
        let b = ball(&g, 0, 1).unwrap();
        assert_eq!(b.vertex_count(), 4);
        assert_eq!(b.induced_edge_count(), 6);
    }

    #[test]
    fn radius_zero_is_a_single_vertex() {
        let g = complete(4).unwrap();
        let b = ball(&g, 2, 0).unwrap();
        assert_eq!(b.vertex_count(), 1);
        assert_eq!(b.induced_edge_count(), 0);
        assert_eq!(b.degree(0), 3);
    }

    #[test]
    fn lattice_ball_counts() {
        // |{(i, j) : |i| + |j| <= r}| = 2r² + 2r + 1
        for r in 0..6 {
            let b = ball_source(&GridZ2, &vec![0, 0], r).unwrap();
            assert_eq!(b.vertex_count(), 2 * r * r + 2 * r + 1);
            assert_eq!(b.boundary().len(), if r == 0 { 1 } else { 4 * r });
        }
    }

    #[test]
    fn tree_ball_sizes() {
        let t = RegularTree::new(4).unwrap();
        let b = ball_source(&t, &t.root(), 3).unwrap();
        assert_eq!(b.vertex_count(), 1 + 4 + 12 + 36);
        assert_eq!(b.induced_edge_count(), b.vertex_count() - 1);
        assert!(b.boundary().iter().all(|&v| b.degree(v) == 4));
    }

    #[test]
    fn budget_is_enforced() {
        let t = RegularTree::new(4).unwrap();
        assert!(matches!(
            ball_source_within(&t, &t.root(), 5, 100),
            Err(NbrwError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn shrink_matches_direct_construction() {
        let big = ball_source(&GridZ2, &vec![0, 0], 6).unwrap();
        let small = ball_source(&GridZ2, &vec![0, 0], 4).unwrap();
        let s = big.shrink(4);
        assert_eq!(s.vertex_count(), small.vertex_count());
        assert_eq!(s.induced_edge_count(), small.induced_edge_count());
    }
}
