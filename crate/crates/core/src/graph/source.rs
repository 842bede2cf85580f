//! Lazily generated infinite graphs.
//!
//! Vertices are identified by small integer vectors ([`VertexKey`]) whose
//! meaning depends on the source: lattice coordinates, child-index paths in a
//! tree, or reduced words in a group.

use crate::error::{NbrwError, Result};

pub type VertexKey = Vec<i32>;

/// Neighbour oracle for a locally finite, connected, infinite graph.
///
/// `neighbors` must be symmetric: `y` appears in `neighbors(x)` with
/// multiplicity `m` iff `x` appears in `neighbors(y)` with multiplicity `m`.
/// Loops are reported separately and are never listed as neighbours.
pub trait GraphSource: Send + Sync {
    fn name(&self) -> String;
    fn root(&self) -> VertexKey;
    /// Non-loop neighbours with multiplicity, in a deterministic order.
    fn neighbors(&self, v: &VertexKey) -> Vec<(VertexKey, usize)>;
    fn loops(&self, _v: &VertexKey) -> usize {
        0
    }
    /// Upper bound `M` on all vertex degrees.
    fn degree_bound(&self) -> usize;
    fn label(&self, v: &VertexKey) -> String;
    fn parse_label(&self, s: &str) -> Result<VertexKey>;
    /// Whether every vertex looks the same; lets callers scan a single ball.
    fn is_vertex_transitive(&self) -> bool {
        false
    }

    fn degree(&self, v: &VertexKey) -> usize {
        2 * self.loops(v) + self.neighbors(v).iter().map(|(_, m)| m).sum::<usize>()
    }
}

/// The square lattice Z².
#[derive(Clone, Copy, Debug, Default)]
pub struct GridZ2;

impl GraphSource for GridZ2 {
    fn name(&self) -> String {
        "grid_Z2".into()
    }

    fn root(&self) -> VertexKey {
        vec![0, 0]
    }

    fn neighbors(&self, v: &VertexKey) -> Vec<(VertexKey, usize)> {
        let (i, j) = (v[0], v[1]);
        vec![
            (vec![i + 1, j], 1),
            (vec![i, j + 1], 1),
            (vec![i - 1, j], 1),
            (vec![i, j - 1], 1),
        ]
    }

    fn degree_bound(&self) -> usize {
        4
    }

    fn label(&self, v: &VertexKey) -> String {
        format!("{},{}", v[0], v[1])
    }

    fn parse_label(&self, s: &str) -> Result<VertexKey> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<_> = t.split(',').map(|p| p.trim().parse::<i32>()).collect();
        match parts.as_slice() {
            [Ok(i), Ok(j)] => Ok(vec![*i, *j]),
            _ => Err(NbrwError::UnknownVertex(s.to_string())),
        }
    }

    fn is_vertex_transitive(&self) -> bool {
        true
    }
}

/// The `d`-regular tree. Vertices are paths of child indices from the root;
/// the root has children `0..d`, every other vertex has children `0..d-1`.
#[derive(Clone, Copy, Debug)]
pub struct RegularTree {
    degree: usize,
}

impl RegularTree {
    pub fn new(degree: usize) -> Result<Self> {
        if degree < 2 {
            return Err(NbrwError::BadParams(format!(
                "tree_regular needs degree >= 2, got {degree}"
            )));
        }
        Ok(Self { degree })
    }
}

impl GraphSource for RegularTree {
    fn name(&self) -> String {
        format!("tree_regular:{}", self.degree)
    }

    fn root(&self) -> VertexKey {
        Vec::new()
    }

    fn neighbors(&self, v: &VertexKey) -> Vec<(VertexKey, usize)> {
        let mut out = Vec::with_capacity(self.degree);
        let children = if v.is_empty() { self.degree } else { self.degree - 1 };
        if !v.is_empty() {
            out.push((v[..v.len() - 1].to_vec(), 1));
        }
        for c in 0..children {
            let mut w = v.clone();
            w.push(c as i32);
            out.push((w, 1));
        }
        out
    }

    fn degree_bound(&self) -> usize {
        self.degree
    }

    fn label(&self, v: &VertexKey) -> String {
        let mut s = String::from("r");
        for c in v {
            s.push('.');
            s.push_str(&c.to_string());
        }
        s
    }

    fn parse_label(&self, s: &str) -> Result<VertexKey> {
        let bad = || NbrwError::UnknownVertex(s.to_string());
        let mut parts = s.trim().split('.');
        if parts.next() != Some("r") {
            return Err(bad());
        }
        let mut key = Vec::new();
        for p in parts {
            let c: i32 = p.parse().map_err(|_| bad())?;
            let limit = if key.is_empty() { self.degree } else { self.degree - 1 };
            if c < 0 || c as usize >= limit {
                return Err(bad());
            }
            key.push(c);
        }
        Ok(key)
    }

    fn is_vertex_transitive(&self) -> bool {
        true
    }
}

/// Cayley graph of the free group on `s` generators: the `2s`-regular tree,
/// labelled by reduced words. Letter `k > 0` is generator `k`, `-k` its inverse.
#[derive(Clone, Copy, Debug)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 26 {
            return Err(NbrwError::BadParams(format!(
                "free_group needs 1 <= s <= 26, got {rank}"
            )));
        }
        Ok(Self { rank })
    }

    fn generators(&self) -> impl Iterator<Item = i32> {
        let s = self.rank as i32;
        (1..=s).flat_map(|k| [k, -k])
    }
}

impl GraphSource for FreeGroup {
    fn name(&self) -> String {
        format!("free_group:{}", self.rank)
    }

    fn root(&self) -> VertexKey {
        Vec::new()
    }

    fn neighbors(&self, v: &VertexKey) -> Vec<(VertexKey, usize)> {
        self.generators()
            .map(|g| {
                let mut w = v.clone();
                if w.last() == Some(&-g) {
                    w.pop();
                } else {
                    w.push(g);
                }
                (w, 1)
            })
            .collect()
    }

    fn degree_bound(&self) -> usize {
        2 * self.rank
    }

    fn label(&self, v: &VertexKey) -> String {
        if v.is_empty() {
            return "e".into();
        }
        v.iter()
            .map(|&k| {
                let c = (b'a' + (k.unsigned_abs() - 1) as u8) as char;
                if k > 0 {
                    c
                } else {
                    c.to_ascii_uppercase()
                }
            })
            .collect()
    }

    fn parse_label(&self, s: &str) -> Result<VertexKey> {
        let s = s.trim();
        if s == "e" {
            return Ok(Vec::new());
        }
        let mut word: VertexKey = Vec::new();
        for ch in s.chars() {
            let k = match ch {
                'a'..='z' => (ch as u8 - b'a' + 1) as i32,
                'A'..='Z' => -((ch as u8 - b'A' + 1) as i32),
                _ => return Err(NbrwError::UnknownVertex(s.to_string())),
            };
            if k.unsigned_abs() as usize > self.rank {
                return Err(NbrwError::UnknownVertex(s.to_string()));
            }
            if word.last() == Some(&-k) {
                word.pop();
            } else {
                word.push(k);
            }
        }
        Ok(word)
    }

    fn is_vertex_transitive(&self) -> bool {
        true
    }
}

/// Cayley graph of the free product Z₃ * Z₃ = ⟨a, b | a³, b³⟩ with generators
/// `a, a⁻¹, b, b⁻¹`. Every vertex lies on one `a`-triangle and one `b`-triangle,
/// so small cycles are dense while the graph is nonamenable.
///
/// Words are alternating syllables: 1 = a, 2 = a², 3 = b, 4 = b².
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeProductZ3;

impl FreeProductZ3 {
    fn multiply(v: &VertexKey, factor: usize, exponent: i32) -> VertexKey {
        let mut w = v.clone();
        let base = 2 * factor as i32;
        match w.last().copied() {
            Some(last) if (last - 1) / 2 == factor as i32 => {
                let e = (last - base + exponent).rem_euclid(3);
                w.pop();
                if e != 0 {
                    w.push(base + e);
                }
            }
            _ => w.push(base + exponent),
        }
        w
    }
}

impl GraphSource for FreeProductZ3 {
    fn name(&self) -> String {
        "free_product_z3".into()
    }

    fn root(&self) -> VertexKey {
        Vec::new()
    }

    fn neighbors(&self, v: &VertexKey) -> Vec<(VertexKey, usize)> {
        [(0, 1), (0, 2), (1, 1), (1, 2)]
            .iter()
            .map(|&(f, e)| (Self::multiply(v, f, e), 1))
            .collect()
    }

    fn degree_bound(&self) -> usize {
        4
    }

    fn label(&self, v: &VertexKey) -> String {
        if v.is_empty() {
            return "e".into();
        }
        v.iter()
            .map(|&s| match s {
                1 => 'a',
                2 => 'A',
                3 => 'b',
                _ => 'B',
            })
            .collect()
    }

    fn parse_label(&self, s: &str) -> Result<VertexKey> {
        let s = s.trim();
        let mut w = Vec::new();
        if s == "e" {
            return Ok(w);
        }
        for ch in s.chars() {
            w = match ch {
                'a' => Self::multiply(&w, 0, 1),
                'A' => Self::multiply(&w, 0, 2),
                'b' => Self::multiply(&w, 1, 1),
                'B' => Self::multiply(&w, 1, 2),
                _ => return Err(NbrwError::UnknownVertex(s.to_string())),
            };
        }
        Ok(w)
    }

    fn is_vertex_transitive(&self) -> bool {
        true
    }
}
