//! Shared corpus and independent oracles for integration tests.
#![allow(dead_code)]

use num::rational::BigRational;
use num::{One, Zero};

use nbrw_core::graph::{
    bouquet, butterfly, complete, complete_bipartite, cycle, petersen, random_bipartite_multigraph,
    random_multigraph, triangles_joined_by_path, Multigraph, MultigraphBuilder, Topology,
};

pub fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// A multigraph with loops and parallel edges.
pub fn decorated() -> Multigraph {
    let mut b = MultigraphBuilder::new();
    b.edge("a", "b", 2).edge("b", "c", 1).edge("c", "a", 1).add_loop("c", 1).edge("c", "d", 1).add_loop("d", 1);
    b.build().unwrap()
}

/// Test corpus: named small graphs, all with at most 12 vertices.
pub fn corpus() -> Vec<(String, Multigraph)> {
    let mut out: Vec<(String, Multigraph)> = vec![
        ("cycle:1".into(), cycle(1).unwrap()),
        ("cycle:2".into(), cycle(2).unwrap()),
        ("cycle:5".into(), cycle(5).unwrap()),
        ("cycle:6".into(), cycle(6).unwrap()),
        ("complete:4".into(), complete(4).unwrap()),
        ("complete:5".into(), complete(5).unwrap()),
        ("complete_bipartite:3,3".into(), complete_bipartite(3, 3).unwrap()),
        ("complete_bipartite:2,3".into(), complete_bipartite(2, 3).unwrap()),
        ("petersen".into(), petersen()),
        ("butterfly".into(), butterfly()),
        ("bouquet:2".into(), bouquet(2).unwrap()),
        ("triangles_path:2".into(), triangles_joined_by_path(2).unwrap()),
        ("triangles_path:4".into(), triangles_joined_by_path(4).unwrap()),
        ("decorated".into(), decorated()),
    ];
    for seed in 0..6 {
        let n = 4 + (seed as usize * 3) % 9;
        out.push((format!("random:{n},{seed},2,4"), random_multigraph(n, 2, 4, seed).unwrap()));
    }
    for seed in 0..3 {
        out.push((
            format!("random_bipartite:3,4,{seed},2,4"),
            random_bipartite_multigraph(3, 4, 2, 4, seed).unwrap(),
        ));
    }
    assert!(out.iter().all(|(_, g)| g.vertex_count() <= 12));
    out
}

pub fn small_corpus() -> Vec<(String, Multigraph)> {
    corpus().into_iter().filter(|(_, g)| g.vertex_count() <= 8).collect()
}

/// Oriented edges listed straight from the incidence data, with the reversal
/// of each one. Edge `i` runs `tail[i] -> head[i]`.
pub struct Darts {
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    pub rev: Vec<usize>,
}

pub fn darts<G: Topology + ?Sized>(g: &G) -> Darts {
    let mut d = Darts { tail: vec![], head: vec![], rev: vec![] };
    let push_pair = |d: &mut Darts, u: usize, v: usize| {
        let i = d.tail.len();
        d.tail.extend([u, v]);
        d.head.extend([v, u]);
        d.rev.extend([i + 1, i]);
    };
    for v in 0..g.vertex_count() {
        for &(u, m) in g.neighbors(v) {
            if u > v {
                for _ in 0..m {
                    push_pair(&mut d, v, u);
                }
            }
        }
        for _ in 0..g.loops(v) {
            push_pair(&mut d, v, v);
        }
    }
    d
}

/// `q^(n)(x, ·)` by listing every non-backtracking path of length `n` from
/// `x` with weight `(1/deg x) Π 1/(deg − 1)`.
pub fn brute_force_nbrw<G: Topology + ?Sized>(g: &G, x: usize, n: usize) -> Vec<BigRational> {
    let d = darts(g);
    let mut out = vec![BigRational::zero(); g.vertex_count()];
    if n == 0 {
        out[x] = BigRational::one();
        return out;
    }
    fn walk<G: Topology + ?Sized>(
        g: &G,
        d: &Darts,
        last: usize,
        left: usize,
        w: BigRational,
        out: &mut [BigRational],
    ) {
        let v = d.head[last];
        if left == 0 {
            out[v] += w;
            return;
        }
        let step = q(1, g.degree(v) as i64 - 1);
        for e in 0..d.tail.len() {
            if d.tail[e] == v && e != d.rev[last] {
                walk(g, d, e, left - 1, &w * &step, out);
            }
        }
    }
    let first = q(1, g.degree(x) as i64);
    for e in 0..d.tail.len() {
        if d.tail[e] == x {
            walk(g, &d, e, n - 1, first.clone(), &mut out);
        }
    }
    out
}

/// `p^(n)(x, ·)` by dense matrix powers of `e(x, y)/deg(x)`.
pub fn srw_dense<G: Topology + ?Sized>(g: &G, x: usize, n: usize) -> Vec<BigRational> {
    let nv = g.vertex_count();
    let p: Vec<Vec<BigRational>> = (0..nv)
        .map(|a| (0..nv).map(|b| q(g.multiplicity(a, b) as i64, g.degree(a) as i64)).collect())
        .collect();
    let mut row = vec![BigRational::zero(); nv];
    row[x] = BigRational::one();
    for _ in 0..n {
        row = (0..nv)
            .map(|b| (0..nv).fold(BigRational::zero(), |acc, a| acc + &row[a] * &p[a][b]))
            .collect();
    }
    row
}

/// `min Area(F)/Vol(F)` over all nonempty `F` with `|F| <= k`, connected or not.
pub fn iota_all_subsets<G: Topology + ?Sized>(g: &G, k: usize) -> BigRational {
    let n = g.vertex_count();
    assert!(n <= 16);
    let mut best: Option<BigRational> = None;
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > k {
            continue;
        }
        let inside = |v: usize| mask & (1 << v) != 0;
        let mut area = 0usize;
        let mut vol = 0usize;
        for v in (0..n).filter(|&v| inside(v)) {
            vol += g.degree(v);
            area += g.neighbors(v).iter().filter(|&&(u, _)| !inside(u)).map(|&(_, m)| m).sum::<usize>();
        }
        let r = q(area as i64, vol as i64);
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    best.unwrap()
}
