//! Multigraphs with loops and multiple edges, lazy infinite sources, balls,
//! metric utilities and canonical generators.
//!
//! Loops are stored as a count per vertex. Wherever the multiplicity
//! `e(x, x)` is needed it is twice that count, so a loop contributes 2 to the
//! degree of its vertex.

mod ball;
mod generators;
mod metric;
mod parse;
mod source;

pub use ball::{ball, ball_source, ball_source_within, BallView};
pub use generators::{
    builtin_graph, butterfly, complete, complete_bipartite, cycle, petersen,
    bouquet, random_bipartite_multigraph, random_multigraph, triangles_joined_by_path, AnyGraph,
    BUILTIN_NAMES,
};
pub(crate) use metric::cycle_radius_at;
pub use metric::{bfs_distances, distance, is_bipartite, small_cycle_radius, Bipartition};
pub use parse::load_multigraph;
pub use source::{FreeGroup, FreeProductZ3, GraphSource, GridZ2, RegularTree, VertexKey};

use std::collections::{BTreeMap, HashMap};

use crate::error::{NbrwError, Result};

/// Read-only view of a finite (possibly truncated) graph with dense vertex ids.
///
/// `degree` is the degree in the underlying graph. For a ball cut out of a larger
/// graph this can exceed the number of incidences visible through `neighbors`
/// and `loops`.
pub trait Topology {
    fn vertex_count(&self) -> usize;
    fn label(&self, v: usize) -> &str;
    fn vertex_id(&self, label: &str) -> Option<usize>;
    /// Non-loop neighbours of `v` with multiplicities, sorted by neighbour id.
    fn neighbors(&self, v: usize) -> &[(usize, usize)];
    fn loops(&self, v: usize) -> usize;
    fn degree(&self, v: usize) -> usize;

    /// `e(x, y)`, with `e(x, x)` twice the loop count.
    fn multiplicity(&self, x: usize, y: usize) -> usize {
        if x == y {
            return 2 * self.loops(x);
        }
        let adj = self.neighbors(x);
        match adj.binary_search_by_key(&y, |&(u, _)| u) {
            Ok(i) => adj[i].1,
            Err(_) => 0,
        }
    }

    fn require(&self, label: &str) -> Result<usize> {
        self.vertex_id(label)
            .ok_or_else(|| NbrwError::UnknownVertex(label.to_string()))
    }

    /// Number of oriented edges visible in this view.
    fn oriented_edge_count(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| 2 * self.loops(v) + self.neighbors(v).iter().map(|&(_, m)| m).sum::<usize>())
            .sum()
    }
}

/// Finite connected multigraph with minimum degree 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<(usize, usize)>>,
    loops: Vec<usize>,
    degree: Vec<usize>,
}

impl Topology for Multigraph {
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

impl Multigraph {
    /// `|E(X)|`, the number of oriented edges (twice the unoriented count).
    pub fn num_oriented_edges(&self) -> usize {
        self.degree.iter().sum()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn min_degree(&self) -> usize {
        self.degree.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = *self.degree.first()?;
        self.degree.iter().all(|&x| x == d).then_some(d)
    }

    /// A connected graph in which every vertex has degree 2.
    pub fn is_cycle(&self) -> bool {
        self.regular_degree() == Some(2)
    }

    /// Unoriented edges `(u, v, multiplicity)` with `u < v`, followed by nothing for loops.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, m)| (u, v, m))
        })
    }

    /// Serialize back into the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v, m) in self.edges() {
            out.push_str(&format!("edge {} {} {}\n", self.labels[u], self.labels[v], m));
        }
        for (v, &c) in self.loops.iter().enumerate() {
            if c > 0 {
                out.push_str(&format!("loop {} {}\n", self.labels[v], c));
            }
        }
        out
    }
}

/// Accumulates edges and loops by label, then validates into a [`Multigraph`].
#[derive(Clone, Debug, Default)]
pub struct MultigraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), usize>,
    loops: BTreeMap<usize, usize>,
}

impl MultigraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, label: &str) -> usize {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }

    /// Adds `mult` parallel edges; `u == v` adds `mult` loops.
    pub fn edge(&mut self, u: &str, v: &str, mult: usize) -> &mut Self {
        let a = self.vertex(u);
        let b = self.vertex(v);
        self.edge_ids(a, b, mult);
        self
    }

    pub fn add_loop(&mut self, u: &str, count: usize) -> &mut Self {
        let a = self.vertex(u);
        *self.loops.entry(a).or_default() += count;
        self
    }

    fn edge_ids(&mut self, a: usize, b: usize, mult: usize) {
        if mult == 0 {
            return;
        }
        if a == b {
            *self.loops.entry(a).or_default() += mult;
        } else {
            *self.edges.entry((a.min(b), a.max(b))).or_default() += mult;
        }
    }

    /// Validates connectivity and the minimum-degree-2 rule.
    pub fn build(self) -> Result<Multigraph> {
        let g = self.build_unchecked();
        if g.labels.is_empty() {
            return Err(NbrwError::BadParams("graph has no vertices".into()));
        }
        if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree[v] < 2) {
            return Err(NbrwError::Degree {
                vertex: g.labels[v].clone(),
                degree: g.degree[v],
            });
        }
        let dist = metric::bfs_distances(&g, 0);
        if let Some(v) = dist.iter().position(|d| d.is_none()) {
            return Err(NbrwError::Disconnected(format!(
                "{} is unreachable from {}",
                g.labels[v], g.labels[0]
            )));
        }
        Ok(g)
    }

    fn build_unchecked(self) -> Multigraph {
        let n = self.labels.len();
        let mut adj = vec![Vec::new(); n];
        for (&(a, b), &m) in &self.edges {
            adj[a].push((b, m));
            adj[b].push((a, m));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut loops = vec![0; n];
        for (&v, &c) in &self.loops {
            loops[v] = c;
        }
        let degree = (0..n)
            .map(|v| 2 * loops[v] + adj[v].iter().map(|&(_, m)| m).sum::<usize>())
            .collect();
        Multigraph {
            labels: self.labels,
            index: self.index,
            adj,
            loops,
            degree,
        }
    }
}

impl Multigraph {
    /// Graph on vertices labelled `"0".."n-1"`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], loops: &[(usize, usize)]) -> Result<Self> {
        let mut b = MultigraphBuilder::new();
        for v in 0..n {
            b.vertex(&v.to_string());
        }
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(NbrwError::BadParams(format!("edge ({u}, {v}) out of range")));
            }
            b.edge_ids(u, v, 1);
        }
        for &(v, c) in loops {
            if v >= n {
                return Err(NbrwError::BadParams(format!("loop at {v} out of range")));
            }
            b.edge_ids(v, v, c);
        }
        b.build()
    }
}
