//! Roots in ℚ⁸ of squared norm 2: rays from pentagram contexts, reflection
//! closure, Coxeter diagrams, orthogonal bases and ray colourings.

mod bases;
mod coxeter;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactkernel::{format_rational, int, rational_sqrt, Rational};
use crate::hilbert::{joint_eigenbasis, ContextSpec, HilbertError};

pub use bases::{
    colouring_count, colouring_search, orthogonal_bases, parity_relaxation, Colouring,
    ColouringOutcome, MAX_RAYS,
};
pub use coxeter::{
    classify_diagram, coxeter_graph, coxeter_graph_with, is_isomorphic, CoxeterGraph,
    FUNCTIONAL_BASES,
};

pub const DIM: usize = 8;
/// Closure gives up past this many vectors.
pub const CLOSURE_LIMIT: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("squared norm is {0}, not 2")]
    NotNorm2(String),
    #[error("context {0} has an eigenvector with a nonreal coordinate")]
    NonReal(usize),
    #[error("context {0} has a ray that cannot be scaled to squared norm 2 over the rationals")]
    Irrational(usize),
    #[error("context {0} acts on {1} dimensions, not {DIM}")]
    WrongDimension(usize, usize),
    #[error("empty seed")]
    EmptySeed,
    #[error("closure exceeded {0} vectors")]
    Diverged(usize),
    #[error("every candidate functional vanishes on some root")]
    NoFunctional,
    #[error("pair of simple roots with unsupported angle: {0}")]
    BadLabel(String),
    #[error("{0} rays exceeds the limit of {MAX_RAYS}")]
    TooManyRays(usize),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector {
    coords: [Rational; DIM],
}

fn dot(a: &[Rational; DIM], b: &[Rational; DIM]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootVector {
    pub fn new(coords: [Rational; DIM]) -> Result<Self, RootError> {
        let n = dot(&coords, &coords);
        if n != int(2) {
            return Err(RootError::NotNorm2(format_rational(&n)));
        }
        Ok(RootVector { coords })
    }

    /// Coordinates given as multiples of 1/2.
    pub fn from_halves(halves: [i64; DIM]) -> Result<Self, RootError> {
        RootVector::new(halves.map(|h| Rational::new(h.into(), 2.into())))
    }

    pub fn coords(&self) -> &[Rational; DIM] {
        &self.coords
    }

    pub fn dot(&self, other: &RootVector) -> Rational {
        dot(&self.coords, &other.coords)
    }

    pub fn neg(&self) -> RootVector {
        RootVector {
            coords: self.coords.clone().map(|c| -c),
        }
    }

    /// Representative of `±self` whose first nonzero coordinate is positive.
    pub fn canonical(&self) -> RootVector {
        let first = self.coords.iter().find(|c| !c.is_zero()).expect("nonzero");
        if first.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn support(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootVector({self})")
    }
}

/// `β - (α,β)·α`, the reflection of `beta` in the wall of `alpha`.
pub fn reflect(alpha: &RootVector, beta: &RootVector) -> RootVector {
    let k = alpha.dot(beta);
    if k.is_zero() {
        return beta.clone();
    }
    let mut coords = beta.coords.clone();
    for (c, a) in coords.iter_mut().zip(&alpha.coords) {
        *c -= &k * a;
    }
    RootVector { coords }
}

/// Sorted, deduplicated roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    roots: Vec<RootVector>,
}

impl RootSystem {
    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &RootVector) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    /// Number of `{α, -α}` pairs, or `None` when some root lacks its negative.
    pub fn antipodal_pairs(&self) -> Option<usize> {
        self.roots
            .iter()
            .all(|r| self.contains(&r.neg()))
            .then_some(self.roots.len() / 2)
    }

    /// Checks every reflection image is present and the only parallel
    /// pairs are `±α`. Returns the number of reflections checked.
    pub fn verify_axioms(&self) -> Result<usize, String> {
        let mut checked = 0;
        for a in &self.roots {
            for b in &self.roots {
                let image = reflect(a, b);
                if !self.contains(&image) {
                    return Err(format!("s_({a}) ({b}) = {image} is missing"));
                }
                checked += 1;
                // With equal norms, parallel means (a,b)^2 = (a,a)(b,b).
                let d = a.dot(b);
                if &d * &d == int(4) && b != a && *b != a.neg() {
                    return Err(format!("{a} and {b} are parallel"));
                }
            }
        }
        Ok(checked)
    }

    /// Distinct inner products between roots.
    pub fn inner_products(&self) -> BTreeSet<Rational> {
        let mut out = BTreeSet::new();
        for a in &self.roots {
            for b in &self.roots {
                out.insert(a.dot(b));
            }
        }
        out
    }

    /// One root per line, coordinates separated by spaces, sorted.
    pub fn export(&self) -> String {
        let mut s = String::new();
        for r in &self.roots {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

/// Smallest set containing `seed` and closed under all mutual reflections.
pub fn reflection_closure(seed: &[RootVector]) -> Result<RootSystem, RootError> {
    reflection_closure_with_limit(seed, CLOSURE_LIMIT)
}

pub fn reflection_closure_with_limit(
    seed: &[RootVector],
    limit: usize,
) -> Result<RootSystem, RootError> {
    if seed.is_empty() {
        return Err(RootError::EmptySeed);
    }
    let mut seen: BTreeSet<RootVector> = BTreeSet::new();
    let mut all: Vec<RootVector> = Vec::new();
    for r in seed {
        if seen.insert(r.clone()) {
            all.push(r.clone());
        }
    }
    // Every pair (i, j) with i, j < done has been reflected both ways.
    let mut done = 0;
    while done < all.len() {
        let a = all[done].clone();
        for j in 0..=done {
            let b = all[j].clone();
            for image in [reflect(&a, &b), reflect(&b, &a)] {
                if seen.insert(image.clone()) {
                    all.push(image);
                    if all.len() > limit {
                        return Err(RootError::Diverged(limit));
                    }
                }
            }
        }
        done += 1;
    }
    Ok(RootSystem {
        roots: seen.into_iter().collect(),
    })
}

/// Joint eigenvectors of each context scaled to squared norm 2 and sign
/// canonicalised; repeats are dropped. The second list gives, per context,
/// the indices of its rays.
pub fn rays_with_bases(
    contexts: &[ContextSpec],
) -> Result<(Vec<RootVector>, Vec<Vec<usize>>), RootError> {
    let mut rays: Vec<RootVector> = Vec::new();
    let mut bases = Vec::new();
    for (c, ctx) in contexts.iter().enumerate() {
        let mut basis = Vec::new();
        for v in joint_eigenbasis(ctx)? {
            let coords = v.ray.coords();
            if coords.len() != DIM {
                return Err(RootError::WrongDimension(c, coords.len()));
            }
            if coords.iter().any(|z| !z.im.is_zero()) {
                return Err(RootError::NonReal(c));
            }
            let re: Vec<Rational> = coords.iter().map(|z| z.re.clone()).collect();
            let n2: Rational = re.iter().map(|x| x * x).sum();
            let factor = rational_sqrt(&(int(2) / n2)).ok_or(RootError::Irrational(c))?;
            let scaled: [Rational; DIM] = std::array::from_fn(|i| &re[i] * &factor);
            let ray = RootVector::new(scaled)?.canonical();
            let idx = match rays.iter().position(|r| *r == ray) {
                Some(i) => i,
                None => {
                    rays.push(ray);
                    rays.len() - 1
                }
            };
            basis.push(idx);
        }
        bases.push(basis);
    }
    Ok((rays, bases))
}

pub fn rays_from_contexts(contexts: &[ContextSpec]) -> Result<Vec<RootVector>, RootError> {
    Ok(rays_with_bases(contexts)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::pentagram_contexts;

    fn e(i: usize, j: usize, sj: i64) -> RootVector {
        let mut h = [0i64; DIM];
        h[i] = 2;
        h[j] = 2 * sj;
        RootVector::from_halves(h).unwrap()
    }

    #[test]
    fn norm_is_enforced() {
        assert!(matches!(
            RootVector::from_halves([2, 0, 0, 0, 0, 0, 0, 0]),
            Err(RootError::NotNorm2(_))
        ));
    }

    #[test]
    fn reflection_basics() {
        let a = e(0, 1, -1);
        let b = e(2, 3, 1);
        assert_eq!(reflect(&a, &a), a.neg());
        assert_eq!(reflect(&a, &b), b);
        let c = e(1, 2, -1);
        assert_eq!(reflect(&a, &c), e(0, 2, -1));
    }

    #[test]
    fn small_closures() {
        let a = e(0, 1, -1);
        assert_eq!(
            reflection_closure(std::slice::from_ref(&a))
                .unwrap()
                .roots(),
            &[a.neg(), a.clone()]
        );
        // A_n from the chain e_i - e_{i+1}: n(n+1) roots.
        for n in 1..=4 {
            let chain: Vec<RootVector> = (0..n).map(|i| e(i, i + 1, -1)).collect();
            assert_eq!(reflection_closure(&chain).unwrap().len(), n * (n + 1));
        }
        assert_eq!(reflection_closure(&[]), Err(RootError::EmptySeed));
    }

    #[test]
    fn closure_guard() {
        let chain: Vec<RootVector> = (0..4).map(|i| e(i, i + 1, -1)).collect();
        assert_eq!(
            reflection_closure_with_limit(&chain, 10),
            Err(RootError::Diverged(10))
        );
    }

    #[test]
    fn pentagram_rays() {
        let (rays, bases) = rays_with_bases(&pentagram_contexts()).unwrap();
        assert_eq!(rays.len(), 40);
        assert_eq!(bases.len(), 5);
        let half = Rational::new(1.into(), 2.into());
        for &i in &bases[0] {
            assert!(rays[i].coords().iter().all(|c| c.abs() == half));
        }
        for b in &bases[1..4] {
            for &i in b {
                assert_eq!(rays[i].support(), 2);
                assert!(rays[i]
                    .coords()
                    .iter()
                    .all(|c| c.is_zero() || c.abs() == int(1)));
            }
        }
        for &i in &bases[4] {
            assert!(rays[i].coords().iter().all(|c| c.abs() == half));
        }
    }

    #[test]
    fn export_format() {
        let sys = reflection_closure(&[e(0, 1, -1)]).unwrap();
        assert_eq!(sys.export(), "-1 1 0 0 0 0 0 0\n1 -1 0 0 0 0 0 0\n");
    }
}

#[cfg(test)]
mod pentagram {
    use super::*;
    use crate::builtin::pentagram_contexts;

    #[test]
    fn closure_is_e8() {
        let rays = rays_from_contexts(&pentagram_contexts()).unwrap();
        let sys = reflection_closure(&rays).unwrap();
        assert_eq!(sys.len(), 240);
        assert_eq!(sys.antipodal_pairs(), Some(120));
        assert_eq!(sys.inner_products(), (-2..=2).map(int).collect());
        assert_eq!(reflection_closure(sys.roots()).unwrap(), sys);
        let graph = coxeter_graph(&sys).unwrap();
        assert_eq!(graph.simple_roots.len(), 8);
        assert_eq!(graph.classification, "E8");
        for t in [19, 23, 29] {
            let other = coxeter_graph_with(&sys, t).unwrap();
            assert!(is_isomorphic(&graph.labels, &other.labels));
        }
    }

    #[test]
    fn bases_and_colouring() {
        let (rays, context_bases) = rays_with_bases(&pentagram_contexts()).unwrap();
        let bases = orthogonal_bases(&rays).unwrap();
        assert_eq!(bases.len(), 25);
        for b in &context_bases {
            let mut b = b.clone();
            b.sort_unstable();
            assert!(bases.contains(&b));
        }
        assert!(!colouring_search(rays.len(), &bases).is_feasible());
        assert_eq!(colouring_count(rays.len(), &context_bases), 8u64.pow(5));
        assert!(!parity_relaxation(rays.len(), &bases).is_consistent());
    }
}
