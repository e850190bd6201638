use num_traits::Zero;

use super::{RootError, RootVector, DIM};
use crate::exactkernel::{gf2_solve, Gf2Solution, Gf2System};

/// Largest ray set accepted by [`orthogonal_bases`].
pub const MAX_RAYS: usize = 64;

/// Ray `i` is coloured `assignment[i]`; `1` marks the chosen ray of a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    pub assignment: Vec<u8>,
}

impl Colouring {
    /// Every basis has exactly one ray coloured 1.
    pub fn satisfies(&self, bases: &[Vec<usize>]) -> bool {
        bases
            .iter()
            .all(|b| b.iter().filter(|&&r| self.assignment[r] == 1).count() == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColouringOutcome {
    Feasible {
        colouring: Colouring,
        nodes: u64,
    },
    /// Exhausted after `nodes` branches; `conflict` is the last basis left
    /// with every ray coloured 0.
    Infeasible {
        nodes: u64,
        conflict: Vec<usize>,
    },
}

impl ColouringOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ColouringOutcome::Feasible { .. })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            ColouringOutcome::Feasible { nodes, .. }
            | ColouringOutcome::Infeasible { nodes, .. } => *nodes,
        }
    }
}

/// Every maximal set of pairwise orthogonal rays with `DIM` members, each
/// sorted, listed in lexicographic order.
pub fn orthogonal_bases(rays: &[RootVector]) -> Result<Vec<Vec<usize>>, RootError> {
    let n = rays.len();
    if n > MAX_RAYS {
        return Err(RootError::TooManyRays(n));
    }
    let mut adj = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            if rays[i].dot(&rays[j]).is_zero() {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    bron_kerbosch(&adj, 0, all, 0, &mut out);
    let mut bases: Vec<Vec<usize>> = out
        .into_iter()
        .filter(|c| c.count_ones() as usize == DIM)
        .map(|c| (0..n).filter(|&i| c >> i & 1 == 1).collect())
        .collect();
    bases.sort();
    Ok(bases)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = ones(p | x)
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .expect("p is nonempty");
    for v in ones(p & !adj[pivot]) {
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

fn ones(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

struct Search<'a> {
    bases: &'a [Vec<usize>],
    /// Bases containing each ray.
    incidence: Vec<Vec<usize>>,
    /// 0, 1, or unset (2).
    colour: Vec<u8>,
    nodes: u64,
    conflict: Vec<usize>,
    /// Stop after this many solutions.
    limit: u64,
    found: u64,
    first: Option<Vec<u8>>,
}

const UNSET: u8 = 2;

impl Search<'_> {
    /// An unsatisfied basis with the fewest open rays; `Err` on a basis
    /// with none left.
    fn pick(&self) -> Result<Option<usize>, usize> {
        let mut best: Option<(usize, usize)> = None;
        for (b, basis) in self.bases.iter().enumerate() {
            if basis.iter().any(|&r| self.colour[r] == 1) {
                continue;
            }
            let open = basis.iter().filter(|&&r| self.colour[r] == UNSET).count();
            if open == 0 {
                return Err(b);
            }
            if best.is_none_or(|(_, o)| open < o) {
                best = Some((b, open));
            }
        }
        Ok(best.map(|(b, _)| b))
    }

    fn run(&mut self) {
        let b = match self.pick() {
            Err(b) => {
                self.conflict = self.bases[b].clone();
                return;
            }
            Ok(None) => {
                self.found += 1;
                if self.first.is_none() {
                    self.first = Some(
                        self.colour
                            .iter()
                            .map(|&c| if c == 1 { 1 } else { 0 })
                            .collect(),
                    );
                }
                return;
            }
            Ok(Some(b)) => b,
        };
        let candidates: Vec<usize> = self.bases[b]
            .iter()
            .copied()
            .filter(|&r| self.colour[r] == UNSET)
            .collect();
        for &r in &candidates {
            self.nodes += 1;
            let mut changed = vec![r];
            self.colour[r] = 1;
            for &c in &self.incidence[r] {
                for &s in &self.bases[c] {
                    if self.colour[s] == UNSET {
                        self.colour[s] = 0;
                        changed.push(s);
                    }
                }
            }
            self.run();
            for s in changed {
                self.colour[s] = UNSET;
            }
            if self.found >= self.limit {
                break;
            }
            // Later branches take r = 0, so solutions are not repeated.
            self.colour[r] = 0;
        }
        for r in candidates {
            self.colour[r] = UNSET;
        }
    }
}

fn search(n: usize, bases: &[Vec<usize>], limit: u64) -> Search<'_> {
    let mut incidence = vec![Vec::new(); n];
    for (b, basis) in bases.iter().enumerate() {
        for &r in basis {
            incidence[r].push(b);
        }
    }
    let mut s = Search {
        bases,
        incidence,
        colour: vec![UNSET; n],
        nodes: 0,
        conflict: Vec::new(),
        limit,
        found: 0,
        first: None,
    };
    s.run();
    s
}

/// Backtracking search for a 0/1 colouring of `n` rays with exactly one 1
/// in every basis. Rays in no basis are coloured 0.
pub fn colouring_search(n: usize, bases: &[Vec<usize>]) -> ColouringOutcome {
    let s = search(n, bases, 1);
    match s.first {
        Some(assignment) => ColouringOutcome::Feasible {
            colouring: Colouring { assignment },
            nodes: s.nodes,
        },
        None => ColouringOutcome::Infeasible {
            nodes: s.nodes,
            conflict: s.conflict,
        },
    }
}

/// Number of valid colourings, counting rays outside every basis as 0.
pub fn colouring_count(n: usize, bases: &[Vec<usize>]) -> u64 {
    search(n, bases, u64::MAX).found
}

/// The mod-2 relaxation: each basis sums to 1 over GF(2). A colouring is a
/// solution, so an inconsistent relaxation rules colourings out.
pub fn parity_relaxation(n: usize, bases: &[Vec<usize>]) -> Gf2Solution {
    let mut sys = Gf2System::new(n);
    for b in bases {
        sys.push(b.iter().copied(), true);
    }
    gf2_solve(&sys)
}
