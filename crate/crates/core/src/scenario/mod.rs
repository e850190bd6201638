//! Operational layer: measurement covers, empirical models with exact
//! rational tables, no-signalling checks, the support presheaf and the
//! noncontextual / probabilistic / possibilistic / strong hierarchy.
//!
//! Outcomes are `+1` and `-1`. A table for a context `C` has `2^|C|` entries;
//! entry `k` belongs to the assignment whose most significant bit is the
//! first observable of `C`, a set bit meaning `-1`. The string key of entry
//! `k` spells the same assignment, e.g. `"+-+"`.

mod avn;
mod classify;
mod format;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactkernel::{format_rational, KernelError, Rational};

pub use avn::{avn_check, local_contexts, AvnReport};
pub use classify::{classify, global_sections, ContextualityClass, Level, NearMiss, Witness};
pub use format::{model_from_json, model_to_json, ScenarioFile};

/// Largest context accepted in a model.
pub const MAX_CONTEXT_SIZE: usize = 16;
/// Largest observable count for which global assignments are searched.
pub const MAX_GLOBAL_OBSERVABLES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("duplicate observable name {0:?}")]
    DuplicateObservable(String),
    #[error("unknown observable {0:?}")]
    UnknownObservable(String),
    #[error("context {0} is empty")]
    EmptyContext(usize),
    #[error("context {context} repeats observable {observable:?}")]
    RepeatedInContext { context: usize, observable: String },
    #[error("observable {0:?} lies in no context")]
    Uncovered(String),
    #[error("context {0} has more than {MAX_CONTEXT_SIZE} observables")]
    ContextTooLarge(usize),
    #[error("{0} tables for {1} contexts")]
    TableCount(usize, usize),
    #[error("context {context}: table has {found} entries, expected {expected}")]
    TableLength {
        context: usize,
        expected: usize,
        found: usize,
    },
    #[error("context {context}: negative probability at {key}")]
    Negative { context: usize, key: String },
    #[error("context {context}: probabilities sum to {sum}, not 1")]
    NotNormalised { context: usize, sum: String },
    #[error("model is signalling ({0} violations); run check_no_signalling for details")]
    Signalling(usize),
    #[error("{0} observables is beyond the global search guard")]
    TooManyObservables(usize),
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Observables `X`, outcomes `{+1, -1}`, and contexts covering `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementCover {
    observables: Vec<String>,
    contexts: Vec<Vec<usize>>,
    maximal: Vec<bool>,
}

impl MeasurementCover {
    pub fn new(observables: Vec<String>, contexts: Vec<Vec<usize>>) -> Result<Self, ScenarioError> {
        let mut seen = BTreeSet::new();
        for name in &observables {
            if !seen.insert(name.as_str()) {
                return Err(ScenarioError::DuplicateObservable(name.clone()));
            }
        }
        let mut covered = vec![false; observables.len()];
        for (ci, ctx) in contexts.iter().enumerate() {
            if ctx.is_empty() {
                return Err(ScenarioError::EmptyContext(ci));
            }
            if ctx.len() > MAX_CONTEXT_SIZE {
                return Err(ScenarioError::ContextTooLarge(ci));
            }
            let mut inside = BTreeSet::new();
            for &o in ctx {
                let name = observables
                    .get(o)
                    .ok_or_else(|| ScenarioError::UnknownObservable(format!("#{o}")))?;
                if !inside.insert(o) {
                    return Err(ScenarioError::RepeatedInContext {
                        context: ci,
                        observable: name.clone(),
                    });
                }
                covered[o] = true;
            }
        }
        if let Some(o) = covered.iter().position(|c| !c) {
            return Err(ScenarioError::Uncovered(observables[o].clone()));
        }
        let sets: Vec<BTreeSet<usize>> = contexts
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        let maximal = sets
            .iter()
            .enumerate()
            .map(|(i, s)| {
                !sets
                    .iter()
                    .enumerate()
                    .any(|(j, t)| j != i && s.is_subset(t) && (s != t || j < i))
            })
            .collect();
        Ok(MeasurementCover {
            observables,
            contexts,
            maximal,
        })
    }

    /// Builds a cover from observable names, in the given order.
    pub fn from_names(observables: &[&str], contexts: &[&[&str]]) -> Result<Self, ScenarioError> {
        let names: Vec<String> = observables.iter().map(|s| s.to_string()).collect();
        let idx = contexts
            .iter()
            .map(|ctx| {
                ctx.iter()
                    .map(|name| {
                        names
                            .iter()
                            .position(|n| n == name)
                            .ok_or_else(|| ScenarioError::UnknownObservable(name.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        MeasurementCover::new(names, idx)
    }

    pub fn observables(&self) -> &[String] {
        &self.observables
    }

    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    pub fn context(&self, c: usize) -> &[usize] {
        &self.contexts[c]
    }

    /// False for a context contained in another (or a repeat of an earlier one).
    pub fn is_maximal(&self, c: usize) -> bool {
        self.maximal[c]
    }

    pub fn context_names(&self, c: usize) -> Vec<&str> {
        self.contexts[c]
            .iter()
            .map(|&o| self.observables[o].as_str())
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.observables.iter().position(|n| n == name)
    }
}

/// `±1` values for `len` observables read off table index `index`.
pub fn assignment_of(index: usize, len: usize) -> Vec<i8> {
    (0..len)
        .map(|k| {
            if index >> (len - 1 - k) & 1 == 1 {
                -1
            } else {
                1
            }
        })
        .collect()
}

/// Inverse of [`assignment_of`].
pub fn index_of_assignment(values: &[i8]) -> usize {
    values
        .iter()
        .fold(0, |acc, &v| acc << 1 | usize::from(v < 0))
}

/// `"+-+"`-style key for an assignment.
pub fn assignment_key(values: &[i8]) -> String {
    values
        .iter()
        .map(|&v| if v < 0 { '-' } else { '+' })
        .collect()
}

/// Parses `"+-+"`; `−` (U+2212) is accepted for `-`.
pub fn parse_assignment_key(key: &str) -> Option<Vec<i8>> {
    key.chars()
        .map(|c| match c {
            '+' => Some(1),
            '-' | '\u{2212}' => Some(-1),
            _ => None,
        })
        .collect()
}

/// Per-context exact distributions over a measurement cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalModel {
    cover: MeasurementCover,
    tables: Vec<Vec<Rational>>,
}

impl EmpiricalModel {
    pub fn new(cover: MeasurementCover, tables: Vec<Vec<Rational>>) -> Result<Self, ScenarioError> {
        if tables.len() != cover.contexts.len() {
            return Err(ScenarioError::TableCount(
                tables.len(),
                cover.contexts.len(),
            ));
        }
        for (c, table) in tables.iter().enumerate() {
            let len = cover.contexts[c].len();
            if table.len() != 1 << len {
                return Err(ScenarioError::TableLength {
                    context: c,
                    expected: 1 << len,
                    found: table.len(),
                });
            }
            if let Some(k) = table.iter().position(|p| p.is_negative()) {
                return Err(ScenarioError::Negative {
                    context: c,
                    key: assignment_key(&assignment_of(k, len)),
                });
            }
            let sum: Rational = table.iter().sum();
            if !sum.is_one() {
                return Err(ScenarioError::NotNormalised {
                    context: c,
                    sum: format_rational(&sum),
                });
            }
        }
        Ok(EmpiricalModel { cover, tables })
    }

    pub fn cover(&self) -> &MeasurementCover {
        &self.cover
    }

    pub fn tables(&self) -> &[Vec<Rational>] {
        &self.tables
    }

    pub fn table(&self, c: usize) -> &[Rational] {
        &self.tables[c]
    }

    pub fn probability(&self, c: usize, values: &[i8]) -> &Rational {
        &self.tables[c][index_of_assignment(values)]
    }

    /// Supported rows of context `c` as assignments in context order.
    pub fn support(&self, c: usize) -> Vec<Vec<i8>> {
        let len = self.cover.contexts[c].len();
        self.tables[c]
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, _)| assignment_of(k, len))
            .collect()
    }

    /// Marginal of context `c` onto the observables `onto` (all inside `c`),
    /// indexed like a table over `onto`.
    pub fn marginal(&self, c: usize, onto: &[usize]) -> Vec<Rational> {
        let ctx = &self.cover.contexts[c];
        let pos: Vec<usize> = onto
            .iter()
            .map(|o| {
                ctx.iter()
                    .position(|x| x == o)
                    .expect("marginal onto a subset")
            })
            .collect();
        let mut out = vec![Rational::zero(); 1 << onto.len()];
        for (k, p) in self.tables[c].iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let full = assignment_of(k, ctx.len());
            let sub: Vec<i8> = pos.iter().map(|&i| full[i]).collect();
            out[index_of_assignment(&sub)] += p;
        }
        out
    }

    /// Context tables induced by a distribution on global assignments.
    pub fn tables_from_global(&self, weights: &[(Vec<i8>, Rational)]) -> Vec<Vec<Rational>> {
        self.cover
            .contexts
            .iter()
            .map(|ctx| {
                let mut t = vec![Rational::zero(); 1 << ctx.len()];
                for (g, w) in weights {
                    let local: Vec<i8> = ctx.iter().map(|&o| g[o]).collect();
                    t[index_of_assignment(&local)] += w;
                }
                t
            })
            .collect()
    }
}

/// Two contexts disagreeing on the marginal of an assignment to their overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub left: usize,
    pub right: usize,
    pub shared: Vec<usize>,
    pub assignment: Vec<i8>,
    pub marginals: (Rational, Rational),
}

/// Every pair of contexts with every assignment on their intersection.
pub fn check_no_signalling(e: &EmpiricalModel) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let contexts = e.cover.contexts();
    for i in 0..contexts.len() {
        for j in i + 1..contexts.len() {
            let shared: Vec<usize> = contexts[i]
                .iter()
                .copied()
                .filter(|o| contexts[j].contains(o))
                .collect();
            if shared.is_empty() {
                continue;
            }
            let a = e.marginal(i, &shared);
            let b = e.marginal(j, &shared);
            for (k, (pa, pb)) in a.into_iter().zip(b).enumerate() {
                if pa != pb {
                    violations.push(Violation {
                        left: i,
                        right: j,
                        shared: shared.clone(),
                        assignment: assignment_of(k, shared.len()),
                        marginals: (pa, pb),
                    });
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Sections of the support presheaf on every subset of every context.
/// Subsets are keyed by sorted observable indices; a section lists values
/// in that sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportPresheaf {
    sections: BTreeMap<Vec<usize>, BTreeSet<Vec<i8>>>,
}

impl SupportPresheaf {
    pub fn sections(&self, subset: &[usize]) -> Option<&BTreeSet<Vec<i8>>> {
        let mut key = subset.to_vec();
        key.sort_unstable();
        self.sections.get(&key)
    }

    pub fn subsets(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.sections.keys()
    }

    /// Restriction of every section to every sub-subset is again a section.
    pub fn is_restriction_closed(&self) -> bool {
        self.sections.iter().all(|(u, secs)| {
            (0..1usize << u.len()).all(|mask| {
                let pos: Vec<usize> = (0..u.len()).filter(|i| mask >> i & 1 == 1).collect();
                let v: Vec<usize> = pos.iter().map(|&i| u[i]).collect();
                let Some(below) = self.sections.get(&v) else {
                    return false;
                };
                secs.iter()
                    .all(|s| below.contains(&pos.iter().map(|&i| s[i]).collect::<Vec<_>>()))
            })
        })
    }
}

pub fn support_presheaf(e: &EmpiricalModel) -> Result<SupportPresheaf, ScenarioError> {
    if let Err(v) = check_no_signalling(e) {
        return Err(ScenarioError::Signalling(v.len()));
    }
    let mut sections: BTreeMap<Vec<usize>, BTreeSet<Vec<i8>>> = BTreeMap::new();
    for (c, ctx) in e.cover.contexts().iter().enumerate() {
        let mut sorted = ctx.clone();
        sorted.sort_unstable();
        for mask in 0..1usize << sorted.len() {
            let u: Vec<usize> = (0..sorted.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| sorted[i])
                .collect();
            if sections.contains_key(&u) {
                continue;
            }
            let marg = e.marginal(c, &u);
            let secs = marg
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(k, _)| assignment_of(k, u.len()))
                .collect();
            sections.insert(u, secs);
        }
    }
    Ok(SupportPresheaf { sections })
}
