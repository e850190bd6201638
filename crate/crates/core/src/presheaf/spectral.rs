use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{FinitePoset, FinitePresheaf, PresheafError};
use crate::hilbert::{born_probability, joint_eigenbasis, ContextSpec, ScaledVector};
use crate::pauli::PauliOp;

/// Contexts closed under intersection, ordered by inclusion. The given
/// contexts come first, then intersections in order of discovery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextPoset {
    poset: FinitePoset,
    members: Vec<Vec<PauliOp>>,
}

impl ContextPoset {
    pub fn from_contexts(contexts: &[ContextSpec]) -> Result<Self, PresheafError> {
        let mut members: Vec<Vec<PauliOp>> = Vec::new();
        let mut sets: Vec<BTreeSet<PauliOp>> = Vec::new();
        for ctx in contexts {
            let set: BTreeSet<PauliOp> = ctx.observables().iter().copied().collect();
            if !sets.contains(&set) {
                sets.push(set);
                members.push(ctx.observables().to_vec());
            }
        }
        let mut start = 0;
        while start < sets.len() {
            let end = sets.len();
            for j in start..end {
                for i in 0..j {
                    let meet: BTreeSet<PauliOp> = sets[i].intersection(&sets[j]).copied().collect();
                    if meet.is_empty() || sets.contains(&meet) {
                        continue;
                    }
                    members.push(
                        members[i]
                            .iter()
                            .copied()
                            .filter(|p| meet.contains(p))
                            .collect(),
                    );
                    sets.push(meet);
                }
            }
            start = end.max(start + 1);
        }
        let names = members
            .iter()
            .map(|m| {
                format!(
                    "{{{}}}",
                    m.iter().map(PauliOp::label).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        let n = sets.len();
        let leq = (0..n)
            .map(|a| (0..n).map(|b| sets[a].is_subset(&sets[b])).collect())
            .collect();
        Ok(ContextPoset {
            poset: FinitePoset::new(names, leq)?,
            members,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn members(&self, a: usize) -> &[PauliOp] {
        &self.members[a]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn context(&self, a: usize) -> Result<ContextSpec, PresheafError> {
        ContextSpec::new(self.members[a].clone())
            .map_err(|e| PresheafError::InvalidContext(e.to_string()))
    }
}

fn characters(ctx: &ContextSpec) -> Result<Vec<Vec<i8>>, PresheafError> {
    let mut seen = Vec::new();
    for v in joint_eigenbasis(ctx)? {
        if !seen.contains(&v.eigenvalues) {
            seen.push(v.eigenvalues);
        }
    }
    Ok(seen)
}

fn assemble(cp: &ContextPoset, stalks: Vec<Vec<Vec<i8>>>) -> Result<FinitePresheaf, PresheafError> {
    let n = cp.len();
    let mut restrictions = BTreeMap::new();
    for u in 0..n {
        for v in 0..n {
            if !cp.poset.leq(u, v) {
                continue;
            }
            let pos: Vec<usize> = cp.members[u]
                .iter()
                .map(|p| {
                    cp.members[v]
                        .iter()
                        .position(|q| q == p)
                        .expect("u is a subset of v")
                })
                .collect();
            let map = stalks[v]
                .iter()
                .map(|s| {
                    let image: Vec<i8> = pos.iter().map(|&i| s[i]).collect();
                    stalks[u]
                        .iter()
                        .position(|t| *t == image)
                        .ok_or(PresheafError::BadRestriction(u, v))
                })
                .collect::<Result<Vec<_>, _>>()?;
            restrictions.insert((u, v), map);
        }
    }
    FinitePresheaf::new(cp.poset.clone(), stalks, restrictions)
}

/// Stalk at each element: the joint eigenvalue patterns of its observables,
/// i.e. its characters. Restriction forgets observables.
pub fn spectral_presheaf(cp: &ContextPoset) -> Result<FinitePresheaf, PresheafError> {
    let stalks = (0..cp.len())
        .map(|a| characters(&cp.context(a)?))
        .collect::<Result<Vec<_>, _>>()?;
    assemble(cp, stalks)
}

/// Subpresheaf of characters to which `state` gives nonzero Born weight.
pub fn support_subpresheaf(
    cp: &ContextPoset,
    state: &ScaledVector,
) -> Result<FinitePresheaf, PresheafError> {
    let mut stalks = Vec::new();
    for a in 0..cp.len() {
        let ctx = cp.context(a)?;
        let mut kept = Vec::new();
        for ch in characters(&ctx)? {
            if !born_probability(state, &ctx, &ch)?.is_zero() {
                kept.push(ch);
            }
        }
        stalks.push(kept);
    }
    assemble(cp, stalks)
}
