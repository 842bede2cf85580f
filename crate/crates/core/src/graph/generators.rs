//! Named graphs and seeded random multigraphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::source::{FreeGroup, FreeProductZ3, GraphSource, GridZ2, RegularTree};
use super::{Multigraph, MultigraphBuilder, Topology};
use crate::error::{NbrwError, Result};

/// Either a finite multigraph or a lazy infinite source.
pub enum AnyGraph {
    Finite(Multigraph),
    Infinite(Box<dyn GraphSource>),
}

impl std::fmt::Debug for AnyGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnyGraph::Finite(g) => write!(f, "Finite({} vertices)", g.vertex_count()),
            AnyGraph::Infinite(s) => write!(f, "Infinite({})", s.name()),
        }
    }
}

impl AnyGraph {
    pub fn finite(&self) -> Result<&Multigraph> {
        match self {
            AnyGraph::Finite(g) => Ok(g),
            AnyGraph::Infinite(_) => Err(NbrwError::InfiniteGraph),
        }
    }

    pub fn source(&self) -> Result<&dyn GraphSource> {
        match self {
            AnyGraph::Finite(_) => Err(NbrwError::FiniteGraph),
            AnyGraph::Infinite(s) => Ok(s.as_ref()),
        }
    }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "cycle:<n>",
    "complete:<n>",
    "complete_bipartite:<m>,<n>",
    "petersen",
    "butterfly",
    "bouquet:<loops>",
    "triangles_path:<length>",
    "grid_Z2",
    "tree_regular:<d>",
    "free_group:<s>",
    "free_product_z3",
    "random_min_deg2:<n>,<seed>",
    "random:<n>,<seed>,<min_deg>,<max_deg>",
    "random_bipartite:<m>,<n>,<seed>,<min_deg>,<max_deg>",
];

/// Resolve `name[:p1,p2,...]`.
pub fn builtin_graph(spec: &str) -> Result<AnyGraph> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n.trim(), p.trim()),
        None => (spec.trim(), ""),
    };
    let nums: Vec<u64> = if params.is_empty() {
        Vec::new()
    } else {
        params
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| NbrwError::BadParams(format!("`{p}` in `{spec}` is not an integer")))
            })
            .collect::<Result<_>>()?
    };
    let arity = |k: usize| -> Result<()> {
        if nums.len() == k {
            Ok(())
        } else {
            Err(NbrwError::BadParams(format!(
                "`{name}` takes {k} parameter(s), got {}",
                nums.len()
            )))
        }
    };
    let u = |i: usize| nums[i] as usize;
    let graph = match name {
        "cycle" => {
            arity(1)?;
            AnyGraph::Finite(cycle(u(0))?)
        }
        "complete" => {
            arity(1)?;
            AnyGraph::Finite(complete(u(0))?)
        }
        "complete_bipartite" => {
            arity(2)?;
            AnyGraph::Finite(complete_bipartite(u(0), u(1))?)
        }
        "petersen" => {
            arity(0)?;
            AnyGraph::Finite(petersen())
        }
        "butterfly" => {
            arity(0)?;
            AnyGraph::Finite(butterfly())
        }
        "bouquet" => {
            arity(1)?;
            AnyGraph::Finite(bouquet(u(0))?)
        }
        "triangles_path" => {
            arity(1)?;
            AnyGraph::Finite(triangles_joined_by_path(u(0))?)
        }
        "grid_Z2" | "grid_z2" => {
            arity(0)?;
            AnyGraph::Infinite(Box::new(GridZ2))
        }
        "tree_regular" => {
            arity(1)?;
            AnyGraph::Infinite(Box::new(RegularTree::new(u(0))?))
        }
        "free_group" => {
            arity(1)?;
            AnyGraph::Infinite(Box::new(FreeGroup::new(u(0))?))
        }
        "free_product_z3" => {
            arity(0)?;
            AnyGraph::Infinite(Box::new(FreeProductZ3))
        }
        "random_min_deg2" => {
            arity(2)?;
            AnyGraph::Finite(random_multigraph(u(0), 2, 4, nums[1])?)
        }
        "random" => {
            arity(4)?;
            AnyGraph::Finite(random_multigraph(u(0), u(2), u(3), nums[1])?)
        }
        "random_bipartite" => {
            arity(5)?;
            AnyGraph::Finite(random_bipartite_multigraph(u(0), u(1), u(3), u(4), nums[2])?)
        }
        _ => {
            return Err(NbrwError::BadParams(format!(
                "unknown builtin `{name}`; expected one of {}",
                BUILTIN_NAMES.join(", ")
            )))
        }
    };
    Ok(graph)
}

/// `C_n`. `cycle(1)` is a single loop and `cycle(2)` a double edge.
pub fn cycle(n: usize) -> Result<Multigraph> {
    match n {
        0 => Err(NbrwError::BadParams("cycle needs n >= 1".into())),
        1 => Multigraph::from_edges(1, &[], &[(0, 1)]),
        _ => {
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Multigraph::from_edges(n, &edges, &[])
        }
    }
}

pub fn complete(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(NbrwError::BadParams(format!("complete needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Multigraph::from_edges(n, &edges, &[])
}

/// `K_{m,n}`: vertices `0..m` on one side, `m..m+n` on the other.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Multigraph> {
    if m < 2 || n < 2 {
        return Err(NbrwError::BadParams(format!(
            "complete_bipartite needs m, n >= 2, got {m}, {n}"
        )));
    }
    let edges: Vec<_> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, m + j)))
        .collect();
    Multigraph::from_edges(m + n, &edges, &[])
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i - (i + 5)`.
pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Multigraph::from_edges(10, &edges, &[]).expect("petersen graph is valid")
}

/// Two triangles sharing the vertex `x`: `x-y-v` and `x-u-w`.
pub fn butterfly() -> Multigraph {
    let mut b = MultigraphBuilder::new();
    b.edge("x", "y", 1)
        .edge("y", "v", 1)
        .edge("v", "x", 1)
        .edge("x", "u", 1)
        .edge("u", "w", 1)
        .edge("w", "x", 1);
    b.build().expect("butterfly graph is valid")
}

/// One vertex carrying `loops` loops.
pub fn bouquet(loops: usize) -> Result<Multigraph> {
    if loops == 0 {
        return Err(NbrwError::BadParams("bouquet needs at least one loop".into()));
    }
    Multigraph::from_edges(1, &[], &[(0, loops)])
}

/// Two triangles whose junction vertices are joined by a path with `length` edges.
pub fn triangles_joined_by_path(length: usize) -> Result<Multigraph> {
    if length == 0 {
        return Err(NbrwError::BadParams("path length must be >= 1".into()));
    }
    // left triangle 0,1,2 (junction 0), path 0 = p_0, ..., p_length = right junction
    let mut edges = vec![(0, 1), (1, 2), (2, 0)];
    let mut prev = 0;
    for k in 1..=length {
        let v = 2 + k;
        edges.push((prev, v));
        prev = v;
    }
    let right = prev;
    let (r1, r2) = (right + 1, right + 2);
    edges.extend([(right, r1), (r1, r2), (r2, right)]);
    Multigraph::from_edges(r2 + 1, &edges, &[])
}

fn degree_sequence(rng: &mut ChaCha8Rng, n: usize, min: usize, max: usize) -> Vec<usize> {
    let mut degs: Vec<usize> = (0..n).map(|_| rng.gen_range(min..=max)).collect();
    if degs.iter().sum::<usize>() % 2 == 1 {
        let i = rng.gen_range(0..n);
        if degs[i] < max {
            degs[i] += 1;
        } else {
            degs[i] -= 1;
        }
    }
    degs
}

fn check_range(n: usize, min: usize, max: usize) -> Result<()> {
    if n == 0 || min < 2 || max < min {
        return Err(NbrwError::BadParams(format!(
            "random graph needs n >= 1 and 2 <= min_deg <= max_deg, got n={n}, {min}..={max}"
        )));
    }
    Ok(())
}

const MAX_ATTEMPTS: usize = 10_000;

/// Configuration-model multigraph on `n` vertices.
///
/// Algorithm: draw each degree uniformly from `min_deg..=max_deg` (fixing the
/// parity of the sum at a random vertex), lay out one stub per unit of degree,
/// shuffle the stubs and pair them consecutively. A pair of stubs at the same
/// vertex becomes a loop, repeated pairs become parallel edges. Degrees are
/// therefore exactly as drawn. Disconnected results are rejected and the whole
/// draw is repeated from the same ChaCha8 stream.
pub fn random_multigraph(n: usize, min_deg: usize, max_deg: usize, seed: u64) -> Result<Multigraph> {
    check_range(n, min_deg, max_deg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let degs = degree_sequence(&mut rng, n, min_deg, max_deg);
        let mut stubs: Vec<usize> = degs
            .iter()
            .enumerate()
            .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
            .collect();
        stubs.shuffle(&mut rng);
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        for pair in stubs.chunks(2) {
            if pair[0] == pair[1] {
                loops.push((pair[0], 1));
            } else {
                edges.push((pair[0], pair[1]));
            }
        }
        match Multigraph::from_edges(n, &edges, &loops) {
            Ok(g) => return Ok(g),
            Err(NbrwError::Disconnected(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(NbrwError::BadParams(format!(
        "no connected sample after {MAX_ATTEMPTS} attempts"
    )))
}

/// Bipartite configuration model with sides `0..a` and `a..a+b`.
///
/// Side-A degrees are drawn uniformly from the range; side-B degrees are then
/// drawn the same way and redrawn until both sides have equal totals. Stubs of
/// side A are shuffled and matched with the shuffled stubs of side B, so there
/// are no loops and the result is bipartite by construction.
pub fn random_bipartite_multigraph(
    a: usize,
    b: usize,
    min_deg: usize,
    max_deg: usize,
    seed: u64,
) -> Result<Multigraph> {
    check_range(a.min(b), min_deg, max_deg)?;
    let (lo_a, hi_a) = (a * min_deg, a * max_deg);
    let (lo_b, hi_b) = (b * min_deg, b * max_deg);
    if lo_a.max(lo_b) > hi_a.min(hi_b) {
        return Err(NbrwError::BadParams(format!(
            "sides {a} and {b} cannot have equal degree totals in {min_deg}..={max_deg}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let da: Vec<usize> = (0..a).map(|_| rng.gen_range(min_deg..=max_deg)).collect();
        let total: usize = da.iter().sum();
        let db: Vec<usize> = (0..b).map(|_| rng.gen_range(min_deg..=max_deg)).collect();
        if db.iter().sum::<usize>() != total {
            continue;
        }
        let mut sa: Vec<usize> = da
            .iter()
            .enumerate()
            .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
            .collect();
        let mut sb: Vec<usize> = db
            .iter()
            .enumerate()
            .flat_map(|(v, &d)| std::iter::repeat_n(a + v, d))
            .collect();
        sa.shuffle(&mut rng);
        sb.shuffle(&mut rng);
        let edges: Vec<_> = sa.into_iter().zip(sb).collect();
        match Multigraph::from_edges(a + b, &edges, &[]) {
            Ok(g) => return Ok(g),
            Err(NbrwError::Disconnected(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(NbrwError::BadParams(format!(
        "no connected sample after {MAX_ATTEMPTS} attempts"
    )))
}
