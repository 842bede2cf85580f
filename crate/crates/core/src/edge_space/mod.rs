//! Oriented edges, the non-backtracking successor relation and the edge chain Q_E.
//!
//! Oriented edges are numbered so that `e` and its reversal are `2k` and
//! `2k + 1`; reversal is `e ^ 1`. Each loop contributes two oriented edges
//! which are each other's reversal, and every parallel copy of an edge is its
//! own pair of oriented edges.

mod kernel;
mod structure;

pub use kernel::NbrwKernel;
pub use structure::{
    analyze_structure, check_reversal_symmetry, solg_distance, turnaround_bound, OlgStructure,
    ReversalReport,
};

use crate::graph::Topology;

#[derive(Clone, Debug)]
pub struct OrientedEdgeSpace {
    tail: Vec<usize>,
    head: Vec<usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    degree: Vec<usize>,
    labels: Vec<String>,
}

impl OrientedEdgeSpace {
    pub fn build<G: Topology + ?Sized>(g: &G) -> Self {
        let n = g.vertex_count();
        let mut tail = Vec::new();
        let mut head = Vec::new();
        for v in 0..n {
            for &(u, m) in g.neighbors(v) {
                if u > v {
                    for _ in 0..m {
                        tail.extend([v, u]);
                        head.extend([u, v]);
                    }
                }
            }
            for _ in 0..g.loops(v) {
                tail.extend([v, v]);
                head.extend([v, v]);
            }
        }
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for e in 0..tail.len() {
            outgoing[tail[e]].push(e);
            incoming[head[e]].push(e);
        }
        OrientedEdgeSpace {
            tail,
            head,
            outgoing,
            incoming,
            degree: (0..n).map(|v| g.degree(v)).collect(),
            labels: (0..n).map(|v| g.label(v).to_string()).collect(),
        }
    }

    /// `|E|`.
    pub fn len(&self) -> usize {
        self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tail.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.degree.len()
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tail[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.head[e]
    }

    pub fn reverse(&self, e: usize) -> usize {
        e ^ 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Oriented edges `e` with `e⁻ = v`.
    pub fn edges_from(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    /// Oriented edges `e` with `e⁺ = v`.
    pub fn edges_into(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    /// All `f` with `e → f`: `f⁻ = e⁺` and `f ≠ ě`.
    pub fn successors(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let rev = self.reverse(e);
        self.outgoing[self.head[e]]
            .iter()
            .copied()
            .filter(move |&f| f != rev)
    }

    /// All `e` with `e → f`.
    pub fn predecessors(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        let rev = self.reverse(f);
        self.incoming[self.tail[f]]
            .iter()
            .copied()
            .filter(move |&e| e != rev)
    }

    pub fn describe(&self, e: usize) -> String {
        format!("{}->{}#{}", self.labels[self.tail[e]], self.labels[self.head[e]], e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bouquet, butterfly, complete, cycle};

    fn bouquet_for_tests(k: usize) -> crate::graph::Multigraph {
        bouquet(k).unwrap()
    }

    #[test]
    fn edge_counts() {
        assert_eq!(OrientedEdgeSpace::build(&cycle(3).unwrap()).len(), 6);
        assert_eq!(OrientedEdgeSpace::build(&butterfly()).len(), 12);
        let b = bouquet_for_tests(2);
        let s = OrientedEdgeSpace::build(&b);
        assert_eq!(s.len(), 4);
        assert_eq!(s.degree(0), 4);
    }

    #[test]
    fn reversal_is_a_fixed_point_free_involution() {
        for g in [complete(4).unwrap(), butterfly(), bouquet_for_tests(3)] {
            let s = OrientedEdgeSpace::build(&g);
            let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            assert_eq!(s.len(), total);
            for e in 0..s.len() {
                let r = s.reverse(e);
                assert_ne!(r, e);
                assert_eq!(s.reverse(r), e);
                assert_eq!(s.head(r), s.tail(e));
                assert_eq!(s.tail(r), s.head(e));
            }
        }
    }

    #[test]
    fn successors_and_predecessors_agree() {
        let s = OrientedEdgeSpace::build(&bouquet_for_tests(2));
        for e in 0..s.len() {
            // a loop edge can follow itself but never its reversal
            let succ: Vec<_> = s.successors(e).collect();
            assert_eq!(succ.len(), 3);
            assert!(succ.contains(&e));
            assert!(!succ.contains(&s.reverse(e)));
            for f in succ {
                assert!(s.predecessors(f).any(|p| p == e));
            }
        }
    }
}
