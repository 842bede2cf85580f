use super::OrientedEdgeSpace;
use crate::error::{NbrwError, Result};
use crate::numeric::Weight;

/// Sparse transition matrix of edge-NBRW,
/// `q_E(e, f) = 1 / (deg(e⁺) − 1)` for `e → f` and 0 otherwise.
///
/// All nonzero entries of a row are equal, so a row is stored as its column
/// list plus one branching number `deg(e⁺) − 1`. On a ball cut out of a
/// larger graph the degree is the ambient one, so rows at the boundary are
/// substochastic.
#[derive(Clone, Debug)]
pub struct NbrwKernel {
    space: OrientedEdgeSpace,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    branching: Vec<u64>,
}

impl NbrwKernel {
    pub fn build(space: OrientedEdgeSpace) -> Result<Self> {
        let mut row_ptr = Vec::with_capacity(space.len() + 1);
        let mut cols = Vec::new();
        let mut branching = Vec::with_capacity(space.len());
        row_ptr.push(0);
        for e in 0..space.len() {
            let h = space.head(e);
            let d = space.degree(h);
            if d < 2 {
                return Err(NbrwError::Degree {
                    vertex: space.vertex_label(h).to_string(),
                    degree: d,
                });
            }
            cols.extend(space.successors(e));
            row_ptr.push(cols.len());
            branching.push((d - 1) as u64);
        }
        Ok(NbrwKernel {
            space,
            row_ptr,
            cols,
            branching,
        })
    }

    pub fn space(&self) -> &OrientedEdgeSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.branching.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branching.is_empty()
    }

    /// Columns `f` with `q_E(e, f) > 0`.
    pub fn row(&self, e: usize) -> &[usize] {
        &self.cols[self.row_ptr[e]..self.row_ptr[e + 1]]
    }

    /// `deg(e⁺) − 1`.
    pub fn branching(&self, e: usize) -> u64 {
        self.branching[e]
    }

    pub fn entry<T: Weight>(&self, e: usize, f: usize) -> T {
        if self.row(e).contains(&f) {
            T::from_ratio(self.row(e).iter().filter(|&&c| c == f).count() as u64, self.branching[e])
        } else {
            T::zero()
        }
    }

    /// Per-row transition probability `1 / (deg(e⁺) − 1)`.
    pub fn weights<T: Weight>(&self) -> Vec<T> {
        self.branching.iter().map(|&b| T::from_ratio(1, b)).collect()
    }

    /// Row vector times matrix: `(μ Q_E)(f) = Σ_e μ(e) q_E(e, f)`.
    pub fn push_forward<T: Weight>(&self, dist: &[T], weights: &[T]) -> Vec<T> {
        let mut next = vec![T::zero(); self.len()];
        for e in 0..self.len() {
            if dist[e].is_zero() {
                continue;
            }
            let share = dist[e].clone() * weights[e].clone();
            for &f in self.row(e) {
                next[f] += share.clone();
            }
        }
        next
    }

    /// Matrix times column vector: `(Q_E g)(e) = Σ_f q_E(e, f) g(f)`.
    pub fn apply<T: Weight>(&self, g: &[T], weights: &[T]) -> Vec<T> {
        (0..self.len())
            .map(|e| {
                let mut acc = T::zero();
                for &f in self.row(e) {
                    acc += g[f].clone();
                }
                acc * weights[e].clone()
            })
            .collect()
    }

    /// Transpose times column vector: `(Q_Eᵀ g)(f) = Σ_e q_E(e, f) g(e)`.
    pub fn apply_transpose<T: Weight>(&self, g: &[T], weights: &[T]) -> Vec<T> {
        self.push_forward(g, weights)
    }

    /// Row `e` of `Q_E^n`.
    pub fn power_row<T: Weight>(&self, e: usize, n: usize) -> Vec<T> {
        let weights = self.weights::<T>();
        let mut dist = vec![T::zero(); self.len()];
        dist[e] = T::one();
        for _ in 0..n {
            dist = self.push_forward(&dist, &weights);
        }
        dist
    }

    /// Dense `Q_E^n`, computed row by row.
    pub fn matrix_power<T: Weight>(&self, n: usize) -> Vec<Vec<T>> {
        (0..self.len()).map(|e| self.power_row(e, n)).collect()
    }

    pub fn row_sums<T: Weight>(&self) -> Vec<T> {
        let ones = vec![T::one(); self.len()];
        self.apply(&ones, &self.weights())
    }

    pub fn column_sums<T: Weight>(&self) -> Vec<T> {
        let ones = vec![T::one(); self.len()];
        self.push_forward(&ones, &self.weights())
    }
}
