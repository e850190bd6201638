use std::fmt;

use num_traits::{One, Zero};

use crate::exactkernel::{format_gaussian, GaussianRational};

/// Dense square matrix over Q(i).
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: vec![GaussianRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    /// Builds from row vectors; `None` unless the rows form a square.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Option<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(ExactMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, other.dim);
        ExactMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, other.dim);
        ExactMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn adjoint(&self) -> ExactMatrix {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(a * b);
        for r1 in 0..a {
            for c1 in 0..a {
                let x = self.get(r1, c1);
                if x.is_zero() {
                    continue;
                }
                for r2 in 0..b {
                    for c2 in 0..b {
                        out.set(r1 * b + r2, c1 * b + c2, x * other.get(r2, c2));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .filter(|&c| !v[c].is_zero())
                    .map(|c| self.get(r, c) * &v[c])
                    .fold(GaussianRational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<GaussianRational> {
        (0..self.dim).map(|r| self.get(r, c).clone()).collect()
    }

    /// Entry-wise flattening, row-major.
    pub fn flatten(&self) -> Vec<GaussianRational> {
        self.entries.clone()
    }

    /// Basis of the column space: the pivot columns of the matrix.
    pub fn column_space(&self) -> Vec<Vec<GaussianRational>> {
        let cols: Vec<Vec<GaussianRational>> = (0..self.dim).map(|c| self.column(c)).collect();
        let pivots = pivot_indices(&cols);
        pivots.into_iter().map(|i| cols[i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<GaussianRational>> = (0..self.dim)
            .map(|r| self.entries[r * self.dim..(r + 1) * self.dim].to_vec())
            .collect();
        rank(&rows)
    }
}

/// Rank of a list of equal-length vectors over Q(i).
pub fn rank(vectors: &[Vec<GaussianRational>]) -> usize {
    pivot_indices(vectors).len()
}

/// Indices of a maximal linearly independent prefix-greedy subset.
fn pivot_indices(vectors: &[Vec<GaussianRational>]) -> Vec<usize> {
    let mut reduced: Vec<(usize, Vec<GaussianRational>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (lead, r) in &reduced {
            if w[*lead].is_zero() {
                continue;
            }
            let f = &w[*lead] / &r[*lead];
            for (wi, ri) in w.iter_mut().zip(r) {
                if !ri.is_zero() {
                    *wi -= &f * ri;
                }
            }
        }
        if let Some(lead) = w.iter().position(|x| !x.is_zero()) {
            reduced.push((lead, w));
            picked.push(idx);
        }
    }
    picked
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| format_gaussian(self.get(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
