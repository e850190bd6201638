use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{RootError, RootSystem, RootVector, DIM};
use crate::exactkernel::{format_rational, Rational};

/// Bases `t` of the functionals `(1, t, t², ..., t⁷)`, tried in order.
pub const FUNCTIONAL_BASES: [i64; 8] = [17, 19, 23, 29, 31, 37, 41, 43];

/// Simple roots with the Coxeter labels `m_ij` between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    pub simple_roots: Vec<RootVector>,
    /// `labels[i][j]`, with 1 on the diagonal.
    pub labels: Vec<Vec<u8>>,
    pub classification: String,
    /// The functional base that separated the roots.
    pub functional: i64,
}

impl CoxeterGraph {
    pub fn edges(&self) -> Vec<(usize, usize, u8)> {
        let n = self.labels.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.labels[i][j] > 2 {
                    out.push((i, j, self.labels[i][j]));
                }
            }
        }
        out
    }
}

impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} nodes", self.classification, self.labels.len())?;
        for (i, j, m) in self.edges() {
            if m == 3 {
                write!(f, ", {}-{}", i + 1, j + 1)?;
            } else {
                write!(f, ", {}-{}[{m}]", i + 1, j + 1)?;
            }
        }
        f.write_str(")")
    }
}

fn functional_value(t: i64, r: &RootVector) -> Rational {
    let mut power = BigInt::from(1);
    let mut total = Rational::zero();
    for c in r.coords() {
        total += c * Rational::from_integer(power.clone());
        power *= t;
    }
    total
}

/// Uses the first base in [`FUNCTIONAL_BASES`] that vanishes on no root.
pub fn coxeter_graph(system: &RootSystem) -> Result<CoxeterGraph, RootError> {
    for t in FUNCTIONAL_BASES {
        match coxeter_graph_with(system, t) {
            Err(RootError::NoFunctional) => continue,
            other => return other,
        }
    }
    Err(RootError::NoFunctional)
}

/// Positive roots are those with positive functional value; simple roots
/// are the positive roots that are not a sum of two positive roots.
pub fn coxeter_graph_with(system: &RootSystem, t: i64) -> Result<CoxeterGraph, RootError> {
    let values: Vec<Rational> = system
        .roots()
        .iter()
        .map(|r| functional_value(t, r))
        .collect();
    if values.iter().any(Zero::is_zero) {
        return Err(RootError::NoFunctional);
    }
    let positive: Vec<&RootVector> = system
        .roots()
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.is_positive())
        .map(|(r, _)| r)
        .collect();
    let pos_set: BTreeSet<&RootVector> = positive.iter().copied().collect();
    let mut simple: Vec<RootVector> = Vec::new();
    for a in &positive {
        let decomposable = positive.iter().any(|b| {
            let diff: [Rational; DIM] = std::array::from_fn(|i| &a.coords()[i] - &b.coords()[i]);
            RootVector::new(diff).is_ok_and(|d| pos_set.contains(&d))
        });
        if !decomposable {
            simple.push((*a).clone());
        }
    }
    let n = simple.len();
    let mut labels = vec![vec![1u8; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels[i][j] = coxeter_label(&simple[i], &simple[j])?;
            }
        }
    }
    let classification = classify_diagram(&labels);
    Ok(CoxeterGraph {
        simple_roots: simple,
        labels,
        classification,
        functional: t,
    })
}

/// `m` with `cos²(π/m) = (α,β)² / ((α,α)(β,β))`.
fn coxeter_label(a: &RootVector, b: &RootVector) -> Result<u8, RootError> {
    let d = a.dot(b);
    let ratio = &d * &d / (a.dot(a) * b.dot(b));
    let four = ratio * Rational::from_integer(4.into());
    match four.to_integer().try_into() {
        Ok(0u8) if four.is_integer() => Ok(2),
        Ok(1u8) if four.is_integer() => Ok(3),
        Ok(2u8) if four.is_integer() => Ok(4),
        Ok(3u8) if four.is_integer() => Ok(6),
        _ => Err(RootError::BadLabel(format!(
            "({a}, {b}) = {}",
            format_rational(&d)
        ))),
    }
}

fn components(labels: &[Vec<u8>]) -> Vec<Vec<usize>> {
    let n = labels.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && labels[i][j] > 2 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn classify_component(labels: &[Vec<u8>], nodes: &[usize]) -> String {
    let n = nodes.len();
    let unknown = || format!("?{n}");
    let mut edges = Vec::new();
    for (a, &i) in nodes.iter().enumerate() {
        for (b, &j) in nodes.iter().enumerate().skip(a + 1) {
            if labels[i][j] > 2 {
                edges.push((a, b, labels[i][j]));
            }
        }
    }
    if n == 1 {
        return "A1".into();
    }
    if edges.len() != n - 1 {
        return unknown();
    }
    let mut degree = vec![0usize; n];
    for &(a, b, _) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let heavy: Vec<(usize, usize, u8)> = edges.iter().copied().filter(|e| e.2 > 3).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    if max_degree <= 2 {
        // A path.
        match heavy.as_slice() {
            [] => format!("A{n}"),
            [(a, b, m)] => {
                let at_end = degree[*a] == 1 || degree[*b] == 1;
                match (m, n, at_end) {
                    (4, _, true) => format!("B{n}"),
                    (4, 4, false) => "F4".into(),
                    (6, 2, _) => "G2".into(),
                    _ => unknown(),
                }
            }
            _ => unknown(),
        }
    } else if max_degree == 3 && heavy.is_empty() && degree.iter().filter(|&&d| d == 3).count() == 1
    {
        let centre = degree
            .iter()
            .position(|&d| d == 3)
            .expect("one branch node");
        let mut arms: Vec<usize> = edges
            .iter()
            .filter_map(|&(a, b, _)| match (a == centre, b == centre) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .map(|first| arm_length(&edges, centre, first))
            .collect();
        arms.sort_unstable();
        match arms.as_slice() {
            [1, 1, k] => format!("D{}", k + 3),
            [1, 2, 2] => "E6".into(),
            [1, 2, 3] => "E7".into(),
            [1, 2, 4] => "E8".into(),
            _ => unknown(),
        }
    } else {
        unknown()
    }
}

fn arm_length(edges: &[(usize, usize, u8)], centre: usize, first: usize) -> usize {
    let mut prev = centre;
    let mut cur = first;
    let mut len = 1;
    loop {
        let next = edges.iter().find_map(|&(a, b, _)| {
            if a == cur && b != prev {
                Some(b)
            } else if b == cur && a != prev {
                Some(a)
            } else {
                None
            }
        });
        match next {
            Some(nx) => {
                prev = cur;
                cur = nx;
                len += 1;
            }
            None => return len,
        }
    }
}

/// Catalogue name of a Coxeter matrix, components joined by `×` in
/// decreasing size (`E8`, `A1×A1`); unmatched components print as `?n`.
pub fn classify_diagram(labels: &[Vec<u8>]) -> String {
    let mut comps = components(labels);
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let names: Vec<String> = comps
        .iter()
        .map(|c| classify_component(labels, c))
        .collect();
    names.join("×")
}

/// Label-preserving bijection between two Coxeter matrices.
pub fn is_isomorphic(a: &[Vec<u8>], b: &[Vec<u8>]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    let profile = |m: &[Vec<u8>], i: usize| {
        let mut p: Vec<u8> = m[i].clone();
        p.sort_unstable();
        p
    };
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        i: usize,
        a: &[Vec<u8>],
        b: &[Vec<u8>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if i == a.len() {
            return true;
        }
        for j in 0..a.len() {
            if used[j] || !ok(i, j) || (0..i).any(|k| a[i][k] != b[j][perm[k]]) {
                continue;
            }
            perm[i] = j;
            used[j] = true;
            if extend(i + 1, a, b, perm, used, ok) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    let ok = |i: usize, j: usize| profile(a, i) == profile(b, j);
    extend(0, a, b, &mut perm, &mut used, &ok)
}
