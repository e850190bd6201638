use std::fmt;

use num_traits::{One, Zero};

use super::{
    check_no_signalling, index_of_assignment, EmpiricalModel, ScenarioError, MAX_GLOBAL_OBSERVABLES,
};
use crate::exactkernel::{lp_feasible, LpOutcome, Rational};

/// Cap on support-compatible globals fed to the LP.
const MAX_LP_VARIABLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Noncontextual,
    Probabilistic,
    Possibilistic,
    Strong,
}

impl Level {
    pub fn verdict(self) -> &'static str {
        match self {
            Level::Noncontextual => "NONCONTEXTUAL",
            Level::Probabilistic => "PROBABILISTIC",
            Level::Possibilistic => "POSSIBILISTIC",
            Level::Strong => "STRONG",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.verdict())
    }
}

/// A global assignment that fits every context's support except one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearMiss {
    pub assignment: Vec<i8>,
    pub killed_by: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Weights on global assignments whose marginals are the model's tables.
    GlobalDistribution(Vec<(Vec<i8>, Rational)>),
    /// No global distribution exists, although every local section extends.
    NoGlobalDistribution { residual: Rational },
    /// A supported section of a context that no global section restricts to.
    NonExtendable { context: usize, section: Vec<i8> },
    /// No global assignment is compatible with all supports.
    EmptySupport {
        globals_checked: u64,
        near_misses: Vec<NearMiss>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextualityClass {
    pub level: Level,
    pub witness: Witness,
}

/// Global assignments (values for every observable, in cover order) whose
/// restriction to each context is supported. Sorted with `+` before `-`.
pub fn global_sections(e: &EmpiricalModel) -> Result<Vec<Vec<i8>>, ScenarioError> {
    compatible_globals(e, None)
}

fn compatible_globals(
    e: &EmpiricalModel,
    skip: Option<usize>,
) -> Result<Vec<Vec<i8>>, ScenarioError> {
    let cover = e.cover();
    let n = cover.observables().len();
    if n > MAX_GLOBAL_OBSERVABLES {
        return Err(ScenarioError::TooManyObservables(n));
    }
    let order: Vec<usize> = (0..cover.contexts().len())
        .filter(|&c| Some(c) != skip)
        .collect();
    let supports: Vec<Vec<Vec<i8>>> = order.iter().map(|&c| e.support(c)).collect();
    let mut out = Vec::new();
    let mut values = vec![0i8; n];
    extend(e, &order, &supports, 0, &mut values, &mut out);
    // Observables outside the searched contexts are free.
    let mut expanded = Vec::new();
    for g in out {
        let free: Vec<usize> = (0..n).filter(|&o| g[o] == 0).collect();
        for mask in 0..1usize << free.len() {
            let mut h = g.clone();
            for (k, &o) in free.iter().enumerate() {
                h[o] = if mask >> (free.len() - 1 - k) & 1 == 1 {
                    -1
                } else {
                    1
                };
            }
            expanded.push(h);
        }
    }
    expanded.sort_by_key(|g| g.iter().map(|&v| v < 0).collect::<Vec<_>>());
    Ok(expanded)
}

fn extend(
    e: &EmpiricalModel,
    order: &[usize],
    supports: &[Vec<Vec<i8>>],
    depth: usize,
    values: &mut Vec<i8>,
    out: &mut Vec<Vec<i8>>,
) {
    if depth == order.len() {
        out.push(values.clone());
        return;
    }
    let ctx = e.cover().context(order[depth]);
    for row in &supports[depth] {
        if ctx
            .iter()
            .zip(row)
            .any(|(&o, &v)| values[o] != 0 && values[o] != v)
        {
            continue;
        }
        let fresh: Vec<usize> = ctx.iter().copied().filter(|&o| values[o] == 0).collect();
        for (&o, &v) in ctx.iter().zip(row) {
            values[o] = v;
        }
        extend(e, order, supports, depth + 1, values, out);
        for o in fresh {
            values[o] = 0;
        }
    }
}

pub fn classify(e: &EmpiricalModel) -> Result<ContextualityClass, ScenarioError> {
    if let Err(v) = check_no_signalling(e) {
        return Err(ScenarioError::Signalling(v.len()));
    }
    let globals = global_sections(e)?;
    let cover = e.cover();
    if globals.is_empty() {
        let mut near_misses = Vec::new();
        for c in 0..cover.contexts().len() {
            for g in compatible_globals(e, Some(c))? {
                near_misses.push(NearMiss {
                    assignment: g,
                    killed_by: c,
                });
            }
        }
        return Ok(ContextualityClass {
            level: Level::Strong,
            witness: Witness::EmptySupport {
                globals_checked: 1u64 << cover.observables().len(),
                near_misses,
            },
        });
    }

    for (c, ctx) in cover.contexts().iter().enumerate() {
        for section in e.support(c) {
            let extends = globals
                .iter()
                .any(|g| ctx.iter().zip(&section).all(|(&o, &v)| g[o] == v));
            if !extends {
                return Ok(ContextualityClass {
                    level: Level::Possibilistic,
                    witness: Witness::NonExtendable {
                        context: c,
                        section,
                    },
                });
            }
        }
    }

    if globals.len() > MAX_LP_VARIABLES {
        return Err(ScenarioError::TooManyObservables(cover.observables().len()));
    }
    // One equation per (context, supported row); unsupported rows force
    // nothing because only support-compatible globals are variables.
    let mut rows = Vec::new();
    for (c, ctx) in cover.contexts().iter().enumerate() {
        for (k, p) in e.table(c).iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let coeffs = globals
                .iter()
                .map(|g| {
                    let local: Vec<i8> = ctx.iter().map(|&o| g[o]).collect();
                    if index_of_assignment(&local) == k {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            rows.push((coeffs, p.clone()));
        }
    }
    match lp_feasible(&rows, globals.len())? {
        LpOutcome::Feasible(w) => {
            let weights = globals
                .into_iter()
                .zip(w)
                .filter(|(_, x)| !x.is_zero())
                .collect();
            Ok(ContextualityClass {
                level: Level::Noncontextual,
                witness: Witness::GlobalDistribution(weights),
            })
        }
        LpOutcome::Infeasible { residual } => Ok(ContextualityClass {
            level: Level::Probabilistic,
            witness: Witness::NoGlobalDistribution { residual },
        }),
    }
}
