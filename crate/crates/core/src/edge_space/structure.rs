use std::collections::VecDeque;

use num::integer::gcd;
use serde::Serialize;

use super::{NbrwKernel, OrientedEdgeSpace};
use crate::error::{NbrwError, Result};
use crate::numeric::Weight;

/// Communication structure of the oriented line graph.
#[derive(Clone, Debug, Serialize)]
pub struct OlgStructure {
    /// Strongly connected component of each oriented edge.
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    /// A class is essential when no arc leaves it.
    pub essential: Vec<bool>,
    /// Period of each class; `None` for a single edge without a self-arc.
    pub component_periods: Vec<Option<usize>>,
    /// Position of each edge in the cyclic decomposition of its class,
    /// in `0..period`.
    pub cyclic_class: Vec<usize>,
    pub irreducible: bool,
    /// `d(Q_E)` when the chain is irreducible.
    pub period: Option<usize>,
}

impl OlgStructure {
    pub fn essential_class_count(&self) -> usize {
        self.essential.iter().filter(|&&e| e).count()
    }

    /// Least common multiple of the class periods.
    pub fn common_period(&self) -> usize {
        self.component_periods
            .iter()
            .map(|p| p.unwrap_or(1))
            .fold(1, num::integer::lcm)
    }
}

pub fn analyze_structure(kernel: &NbrwKernel) -> OlgStructure {
    let n = kernel.len();
    let component_of = strongly_connected_components(kernel);
    let count = component_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut components = vec![Vec::new(); count];
    for e in 0..n {
        components[component_of[e]].push(e);
    }
    let mut essential = vec![true; count];
    for e in 0..n {
        for &f in kernel.row(e) {
            if component_of[f] != component_of[e] {
                essential[component_of[e]] = false;
            }
        }
    }
    let mut component_periods = vec![None; count];
    let mut cyclic_class = vec![0; n];
    let mut level = vec![usize::MAX; n];
    for (c, members) in components.iter().enumerate() {
        // BFS levels inside the class, then gcd of level(u) + 1 - level(v) over arcs
        let start = members[0];
        level[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut g = 0usize;
        while let Some(u) = queue.pop_front() {
            for &v in kernel.row(u) {
                if component_of[v] != c {
                    continue;
                }
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                } else {
                    g = gcd(g, (level[u] + 1).abs_diff(level[v]));
                }
            }
        }
        if g > 0 {
            component_periods[c] = Some(g);
            for &e in members {
                cyclic_class[e] = level[e] % g;
            }
        }
    }
    let irreducible = count == 1;
    OlgStructure {
        component_of,
        essential,
        period: if irreducible { component_periods[0] } else { None },
        component_periods,
        cyclic_class,
        irreducible,
        components,
    }
}

/// Iterative Tarjan; component ids are assigned in order of completion.
fn strongly_connected_components(kernel: &NbrwKernel) -> Vec<usize> {
    let n = kernel.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let row = kernel.row(v);
            if *pos < row.len() {
                let w = row[*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

fn olg_bfs(space: &OrientedEdgeSpace, from: usize, symmetric: bool) -> Vec<Option<usize>> {
    let mut dist = vec![None; space.len()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(e) = queue.pop_front() {
        let d = dist[e].unwrap();
        let mut visit = |f: usize, queue: &mut VecDeque<usize>| {
            if dist[f].is_none() {
                dist[f] = Some(d + 1);
                queue.push_back(f);
            }
        };
        for f in space.successors(e) {
            visit(f, &mut queue);
        }
        if symmetric {
            for f in space.predecessors(e) {
                visit(f, &mut queue);
            }
        }
    }
    dist
}

/// Shortest OLG path lengths from `e` (`None` if unreachable).
/// `L = max_e` (length of the shortest OLG walk from `e` to `ě`), or `None`
/// when some reversal is unreachable.
pub fn turnaround_bound(kernel: &NbrwKernel) -> Option<usize> {
    let space = kernel.space();
    let mut worst = 0;
    for e in 0..space.len() {
        let d = olg_bfs(space, e, false)[space.reverse(e)]?;
        worst = worst.max(d);
    }
    Some(worst)
}

/// Graph distance in the symmetrized oriented line graph.
pub fn solg_distance(space: &OrientedEdgeSpace, e: usize, f: usize) -> Result<usize> {
    if e >= space.len() || f >= space.len() {
        return Err(NbrwError::UnknownVertex(format!("oriented edge {}", e.max(f))));
    }
    olg_bfs(space, e, true)[f].ok_or_else(|| {
        NbrwError::Disconnected(format!(
            "{} and {} lie in different SOLG components",
            space.describe(e),
            space.describe(f)
        ))
    })
}

/// Outcome of comparing `q_E^(n)(e, f)` with `q_E^(n)(f̌, ě)` over all pairs.
#[derive(Clone, Debug, Serialize)]
pub struct ReversalReport {
    pub n: usize,
    pub numeric_mode: &'static str,
    pub pairs_checked: usize,
    pub violations: Vec<(usize, usize)>,
    pub max_deviation: f64,
}

impl ReversalReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_reversal_symmetry<T: Weight>(kernel: &NbrwKernel, n: usize) -> ReversalReport {
    let power = kernel.matrix_power::<T>(n);
    let space = kernel.space();
    let mut violations = Vec::new();
    let mut max_deviation = 0.0f64;
    let len = kernel.len();
    for e in 0..len {
        for f in 0..len {
            let a = &power[e][f];
            let b = &power[space.reverse(f)][space.reverse(e)];
            max_deviation = max_deviation.max(a.abs_diff(b));
            if !a.approx_eq(b, 1e-12) {
                violations.push((e, f));
            }
        }
    }
    ReversalReport {
        n,
        numeric_mode: T::MODE,
        pairs_checked: len * len,
        violations,
        max_deviation,
    }
}
