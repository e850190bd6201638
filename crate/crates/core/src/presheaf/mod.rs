//! Finite posets, set-valued presheaves on them, and the search for global
//! sections. Sections are sign vectors; restriction maps are index tables.

mod ring;
mod spectral;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::hilbert::HilbertError;

pub use ring::{
    coordinate_rings, pspec_functor_points, pspec_points, CoordinateRing, PSpecPoint,
    MAX_RING_VARIABLES,
};
pub use spectral::{spectral_presheaf, support_subpresheaf, ContextPoset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresheafError {
    #[error("order is not {0}")]
    NotPartialOrder(&'static str),
    #[error("relation names element {0}, poset has {1}")]
    UnknownElement(usize, usize),
    #[error("{0} stalks for {1} elements")]
    StalkCount(usize, usize),
    #[error("no restriction map for {0} <= {1}")]
    MissingRestriction(usize, usize),
    #[error("restriction {0} <= {1} has a wrong shape or an index out of range")]
    BadRestriction(usize, usize),
    #[error("restrictions along {0} <= {1} <= {2} do not compose")]
    NotFunctorial(usize, usize, usize),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("ring at {lower} has variable {variable:?} missing from the ring at {upper}")]
    VariableInclusion {
        lower: usize,
        upper: usize,
        variable: String,
    },
    #[error("relation mentions unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("{0} variables exceeds the guard of {MAX_RING_VARIABLES}")]
    TooManyVariables(usize),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

/// Named elements with a reflexive, antisymmetric, transitive order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Validates a full order matrix, `leq[a][b]` meaning `a <= b`.
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, PresheafError> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(PresheafError::NotPartialOrder("square"));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(PresheafError::NotPartialOrder("reflexive"));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(PresheafError::NotPartialOrder("antisymmetric"));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(PresheafError::NotPartialOrder("transitive"));
                    }
                }
            }
        }
        Ok(FinitePoset { names, leq })
    }

    /// Reflexive-transitive closure of the given `(lower, upper)` pairs.
    pub fn from_relations(
        names: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, PresheafError> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(PresheafError::UnknownElement(a.max(b), n));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a][k] {
                    let through = leq[k].clone();
                    for (dst, &via) in leq[a].iter_mut().zip(&through) {
                        *dst |= via;
                    }
                }
            }
        }
        FinitePoset::new(names, leq)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Elements with nothing strictly above them.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| b == a || !self.leq[a][b]))
            .collect()
    }

    /// Covering pairs `(lower, upper)`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq[a][b] {
                    continue;
                }
                let covered = (0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]);
                if !covered {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Hasse diagram in Graphviz syntax, bottom to top.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, name) in self.names.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", name.replace('"', "\\\""));
        }
        for (a, b) in self.hasse_edges() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Stalks of sign-vector sections with restriction maps for every `u <= v`,
/// stored as tables from section indices of `v` to section indices of `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresheaf {
    poset: FinitePoset,
    stalks: Vec<Vec<Vec<i8>>>,
    restrictions: BTreeMap<(usize, usize), Vec<usize>>,
}

impl FinitePresheaf {
    /// Checks shapes and functoriality.
    pub fn new(
        poset: FinitePoset,
        stalks: Vec<Vec<Vec<i8>>>,
        restrictions: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        if stalks.len() != poset.len() {
            return Err(PresheafError::StalkCount(stalks.len(), poset.len()));
        }
        let n = poset.len();
        for u in 0..n {
            for v in 0..n {
                if !poset.leq(u, v) {
                    continue;
                }
                let map = restrictions
                    .get(&(u, v))
                    .ok_or(PresheafError::MissingRestriction(u, v))?;
                if map.len() != stalks[v].len() || map.iter().any(|&i| i >= stalks[u].len()) {
                    return Err(PresheafError::BadRestriction(u, v));
                }
            }
        }
        let p = FinitePresheaf {
            poset,
            stalks,
            restrictions,
        };
        p.check_functoriality()?;
        Ok(p)
    }

    /// Identity on each `u <= u` and composition along every `u <= v <= w`.
    pub fn check_functoriality(&self) -> Result<(), PresheafError> {
        let n = self.poset.len();
        for u in 0..n {
            if self.restrictions[&(u, u)]
                .iter()
                .enumerate()
                .any(|(i, &j)| i != j)
            {
                return Err(PresheafError::NotFunctorial(u, u, u));
            }
            for v in 0..n {
                if !self.poset.leq(u, v) {
                    continue;
                }
                for w in 0..n {
                    if !self.poset.leq(v, w) {
                        continue;
                    }
                    let vw = &self.restrictions[&(v, w)];
                    let uv = &self.restrictions[&(u, v)];
                    let uw = &self.restrictions[&(u, w)];
                    if (0..self.stalks[w].len()).any(|s| uv[vw[s]] != uw[s]) {
                        return Err(PresheafError::NotFunctorial(u, v, w));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn stalk(&self, a: usize) -> &[Vec<i8>] {
        &self.stalks[a]
    }

    /// Index in `stalk(u)` of the restriction of section `s` of `stalk(v)`.
    pub fn restrict(&self, u: usize, v: usize, s: usize) -> Option<usize> {
        self.restrictions.get(&(u, v)).map(|m| m[s])
    }

    /// Presheaf with a single empty section everywhere.
    pub fn constant_point(poset: FinitePoset) -> Self {
        let n = poset.len();
        let mut restrictions = BTreeMap::new();
        for u in 0..n {
            for v in 0..n {
                if poset.leq(u, v) {
                    restrictions.insert((u, v), vec![0]);
                }
            }
        }
        FinitePresheaf {
            poset,
            stalks: vec![vec![Vec::new()]; n],
            restrictions,
        }
    }
}

/// One node of the global-section search: a choice of section at a
/// maximal element, and whether it survived the compatibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchNode {
    pub parent: Option<usize>,
    pub element: usize,
    pub section: usize,
    pub accepted: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchTree {
    pub nodes: Vec<SearchNode>,
}

impl SearchTree {
    pub fn to_dot(&self, p: &FinitePresheaf) -> String {
        let mut s = String::from("digraph search {\n  root [label=\"start\"];\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let section: String = p.stalk(node.element)[node.section]
                .iter()
                .map(|&v| if v < 0 { '-' } else { '+' })
                .collect();
            let style = if node.accepted { "" } else { ", color=red" };
            let _ = writeln!(
                s,
                "  s{i} [label=\"{}: {section}\"{style}];",
                p.poset().name(node.element)
            );
            match node.parent {
                Some(q) => {
                    let _ = writeln!(s, "  s{q} -> s{i};");
                }
                None => {
                    let _ = writeln!(s, "  root -> s{i};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// All compatible families, each giving a section index per element.
pub fn global_sections(p: &FinitePresheaf) -> Vec<Vec<usize>> {
    global_sections_traced(p).0
}

/// Backtracks over maximal elements; a choice is accepted when its
/// restrictions agree with everything fixed so far.
pub fn global_sections_traced(p: &FinitePresheaf) -> (Vec<Vec<usize>>, SearchTree) {
    let maximal = p.poset().maximal();
    let mut fixed: Vec<Option<usize>> = vec![None; p.poset().len()];
    let mut out = Vec::new();
    let mut tree = SearchTree::default();
    search(p, &maximal, 0, None, &mut fixed, &mut out, &mut tree);
    (out, tree)
}

fn search(
    p: &FinitePresheaf,
    maximal: &[usize],
    depth: usize,
    parent: Option<usize>,
    fixed: &mut Vec<Option<usize>>,
    out: &mut Vec<Vec<usize>>,
    tree: &mut SearchTree,
) {
    if depth == maximal.len() {
        out.push(
            fixed
                .iter()
                .map(|s| s.expect("every element lies below a maximal one"))
                .collect(),
        );
        return;
    }
    let v = maximal[depth];
    let below: Vec<usize> = (0..p.poset().len())
        .filter(|&u| p.poset().leq(u, v))
        .collect();
    for s in 0..p.stalk(v).len() {
        let accepted = below
            .iter()
            .all(|&u| fixed[u].is_none_or(|t| p.restrict(u, v, s) == Some(t)));
        tree.nodes.push(SearchNode {
            parent,
            element: v,
            section: s,
            accepted,
        });
        if !accepted {
            continue;
        }
        let node = tree.nodes.len() - 1;
        let newly: Vec<usize> = below
            .iter()
            .copied()
            .filter(|&u| fixed[u].is_none())
            .collect();
        for &u in &newly {
            fixed[u] = p.restrict(u, v, s);
        }
        search(p, maximal, depth + 1, Some(node), fixed, out, tree);
        for u in newly {
            fixed[u] = None;
        }
    }
}
