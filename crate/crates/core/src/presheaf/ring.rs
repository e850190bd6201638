use std::collections::BTreeMap;
use std::fmt;

use super::{global_sections, ContextPoset, FinitePoset, FinitePresheaf, PresheafError};
use crate::hilbert::{eigenvalue_of, ScaledVector};

/// Largest variable count for which points are enumerated.
pub const MAX_RING_VARIABLES: usize = 20;

/// `Z2[s...]` modulo relations `∏ s = ±1`. Values of the variables live in
/// `{+1, -1}`, so points are sign assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateRing {
    variables: Vec<String>,
    relations: Vec<(Vec<usize>, i8)>,
}

impl CoordinateRing {
    pub fn new(
        variables: Vec<String>,
        relations: Vec<(Vec<String>, i8)>,
    ) -> Result<Self, PresheafError> {
        let relations = relations
            .into_iter()
            .map(|(mono, sign)| {
                let idx = mono
                    .iter()
                    .map(|v| {
                        variables
                            .iter()
                            .position(|x| x == v)
                            .ok_or_else(|| PresheafError::UnknownVariable(v.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((idx, sign))
            })
            .collect::<Result<Vec<_>, PresheafError>>()?;
        Ok(CoordinateRing {
            variables,
            relations,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn relations(&self) -> &[(Vec<usize>, i8)] {
        &self.relations
    }
}

impl fmt::Display for CoordinateRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z2[{}]", self.variables.join(", "))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self
                .relations
                .iter()
                .map(|(m, s)| {
                    let mono: Vec<&str> = m.iter().map(|&i| self.variables[i].as_str()).collect();
                    format!("{}{}1", mono.join("·"), if *s < 0 { "+" } else { "-" })
                })
                .collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

/// A closed point: the maximal ideal `(s - a, ...)` of a sign assignment,
/// whose residue map sends each variable to its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSpecPoint {
    pub variables: Vec<String>,
    pub assignment: Vec<i8>,
}

impl PSpecPoint {
    /// Residue of variable `name` modulo the ideal.
    pub fn value(&self, name: &str) -> Option<i8> {
        self.variables
            .iter()
            .position(|v| v == name)
            .map(|i| self.assignment[i])
    }

    /// Generators of the maximal ideal, e.g. `(s1+1, s2+1, s3-1)`.
    pub fn ideal(&self) -> String {
        let gens: Vec<String> = self
            .variables
            .iter()
            .zip(&self.assignment)
            .map(|(v, &a)| format!("{v}{}1", if a < 0 { "+" } else { "-" }))
            .collect();
        format!("({})", gens.join(", "))
    }
}

/// Every sign assignment satisfying all relations, `+` before `-`.
pub fn pspec_points(ring: &CoordinateRing) -> Result<Vec<PSpecPoint>, PresheafError> {
    let n = ring.variables.len();
    if n > MAX_RING_VARIABLES {
        return Err(PresheafError::TooManyVariables(n));
    }
    let bit = |i: usize| 1u32 << (n - 1 - i);
    let masks: Vec<(u32, bool)> = ring
        .relations
        .iter()
        .map(|(m, s)| (m.iter().fold(0, |acc, &i| acc ^ bit(i)), *s < 0))
        .collect();
    let mut points = Vec::new();
    for a in 0..1u32 << n {
        if masks
            .iter()
            .all(|&(m, neg)| ((a & m).count_ones() % 2 == 1) == neg)
        {
            let assignment = (0..n)
                .map(|i| if a & bit(i) != 0 { -1 } else { 1 })
                .collect();
            points.push(PSpecPoint {
                variables: ring.variables.clone(),
                assignment,
            });
        }
    }
    Ok(points)
}

/// One ring per poset element: variables are the member labels, and the
/// relation is the sign of the members' product when that product is
/// `±I`, or its eigenvalue on `state` when that is defined.
pub fn coordinate_rings(
    cp: &ContextPoset,
    state: Option<&ScaledVector>,
) -> Result<Vec<CoordinateRing>, PresheafError> {
    let mut rings = Vec::new();
    for a in 0..cp.len() {
        let ctx = cp.context(a)?;
        let p = ctx.product();
        let sign = match (p.is_scalar(), p.letter_sign()) {
            (true, Some(s)) => Some(s),
            _ => match state {
                Some(s) => eigenvalue_of(&p, s)?,
                None => None,
            },
        };
        let labels = ctx.labels();
        let relations = sign.map(|s| vec![(labels.clone(), s)]).unwrap_or_default();
        rings.push(CoordinateRing::new(labels, relations)?);
    }
    Ok(rings)
}

/// Families of points, one per element, agreeing on shared variables
/// along the order.
pub fn pspec_functor_points(
    rings: &[CoordinateRing],
    poset: &FinitePoset,
) -> Result<Vec<Vec<PSpecPoint>>, PresheafError> {
    if rings.len() != poset.len() {
        return Err(PresheafError::StalkCount(rings.len(), poset.len()));
    }
    let points = rings
        .iter()
        .map(pspec_points)
        .collect::<Result<Vec<_>, _>>()?;
    let stalks: Vec<Vec<Vec<i8>>> = points
        .iter()
        .map(|ps| ps.iter().map(|p| p.assignment.clone()).collect())
        .collect();
    let mut restrictions = BTreeMap::new();
    for u in 0..poset.len() {
        for v in 0..poset.len() {
            if !poset.leq(u, v) {
                continue;
            }
            let pos = rings[u]
                .variables
                .iter()
                .map(|x| {
                    rings[v]
                        .variables
                        .iter()
                        .position(|y| y == x)
                        .ok_or_else(|| PresheafError::VariableInclusion {
                            lower: u,
                            upper: v,
                            variable: x.clone(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
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
    let sheaf = FinitePresheaf::new(poset.clone(), stalks, restrictions)?;
    Ok(global_sections(&sheaf)
        .into_iter()
        .map(|family| {
            family
                .into_iter()
                .enumerate()
                .map(|(a, s)| points[a][s].clone())
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{ghz_contexts, ghz_state};

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cubic_ring_has_four_points() {
        let ring = CoordinateRing::new(
            names(&["s1", "s2", "s3"]),
            vec![(names(&["s1", "s2", "s3"]), 1)],
        )
        .unwrap();
        let pts = pspec_points(&ring).unwrap();
        assert_eq!(pts.len(), 4);
        let p = pts.iter().find(|p| p.assignment == [-1, -1, 1]).unwrap();
        assert_eq!(p.ideal(), "(s1+1, s2+1, s3-1)");
        assert_eq!(
            (p.value("s1"), p.value("s2"), p.value("s3")),
            (Some(-1), Some(-1), Some(1))
        );
        assert_eq!(ring.to_string(), "Z2[s1, s2, s3]/(s1·s2·s3-1)");
    }

    #[test]
    fn linear_relation_pins_a_point() {
        let ring = CoordinateRing::new(names(&["s"]), vec![(names(&["s"]), 1)]).unwrap();
        let pts = pspec_points(&ring).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].value("s"), Some(1));
    }

    #[test]
    fn guards_and_unknowns() {
        let many: Vec<String> = (0..21).map(|i| format!("s{i}")).collect();
        let ring = CoordinateRing::new(many, vec![]).unwrap();
        assert_eq!(
            pspec_points(&ring),
            Err(PresheafError::TooManyVariables(21))
        );
        assert!(matches!(
            CoordinateRing::new(names(&["s"]), vec![(names(&["t"]), 1)]),
            Err(PresheafError::UnknownVariable(_))
        ));
    }

    #[test]
    fn ghz_rings_are_pointless() {
        let cp = ContextPoset::from_contexts(&ghz_contexts()).unwrap();
        let rings = coordinate_rings(&cp, Some(&ghz_state())).unwrap();
        let signs: Vec<i8> = rings[..4].iter().map(|r| r.relations()[0].1).collect();
        assert_eq!(signs, vec![1, -1, -1, -1]);
        assert!(rings[4..].iter().all(|r| r.relations().is_empty()));
        assert!(pspec_functor_points(&rings, cp.poset()).unwrap().is_empty());
    }

    #[test]
    fn free_rings_glue_to_the_full_product() {
        let cp = ContextPoset::from_contexts(&ghz_contexts()).unwrap();
        let rings = coordinate_rings(&cp, None).unwrap();
        assert_eq!(pspec_functor_points(&rings, cp.poset()).unwrap().len(), 64);
        let single = FinitePoset::new(names(&["A"]), vec![vec![true]]).unwrap();
        assert_eq!(pspec_functor_points(&rings[..1], &single).unwrap().len(), 8);
    }

    #[test]
    fn variable_inclusion_is_enforced() {
        let poset = FinitePoset::from_relations(names(&["low", "high"]), &[(0, 1)]).unwrap();
        let low = CoordinateRing::new(names(&["t"]), vec![]).unwrap();
        let high = CoordinateRing::new(names(&["s"]), vec![]).unwrap();
        assert!(matches!(
            pspec_functor_points(&[low, high], &poset),
            Err(PresheafError::VariableInclusion {
                lower: 0,
                upper: 1,
                ..
            })
        ));
    }
}
