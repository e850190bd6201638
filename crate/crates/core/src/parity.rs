//! Valuation constraints as GF(2) systems. A value `ν(A) = (-1)^b` becomes
//! the bit `b`, and a multiplicative equation `∏ ν(Aᵢ) = ±1` becomes one
//! XOR row.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::builtin::pentagram_contexts;
use crate::exactkernel::{gf2_solve, Certificate, Gf2Solution, Gf2System};
use crate::hilbert::{eigenvalue_of, ContextSpec, HilbertError, ScaledVector};
use crate::pauli::{multiply, PauliError, PauliOp};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParityError {
    #[error("state is not an eigenvector of the product {product} of context {context}")]
    NotStabilised { context: usize, product: String },
    #[error("product of context {0} is not a real multiple of the identity")]
    NotScalarProduct(usize),
    #[error("set is not closed: {0} * {1} is missing")]
    NotClosed(String, String),
    #[error("{0} is not Hermitian")]
    NotHermitian(String),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

/// `∏ ν(factor) = sign`, tagged with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEquation {
    pub factors: Vec<String>,
    pub sign: i8,
    pub origin: String,
}

impl fmt::Display for RowEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            f.write_str("1")?;
        } else {
            let lhs: Vec<String> = self.factors.iter().map(|v| format!("ν({v})")).collect();
            f.write_str(&lhs.join("·"))?;
        }
        write!(f, " = {}", if self.sign < 0 { "−1" } else { "1" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationSystem {
    variables: Vec<String>,
    system: Gf2System,
    equations: Vec<RowEquation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValuationReport {
    /// Valuations are listed (aligned with the variables) when the solution
    /// space was small enough to enumerate.
    Consistent {
        dimension: usize,
        valuations: Option<Vec<Vec<i8>>>,
    },
    Inconsistent {
        certificate: Certificate,
        derivation: Vec<String>,
    },
}

impl ValuationReport {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ValuationReport::Consistent { .. })
    }

    pub fn verdict(&self) -> &'static str {
        if self.is_consistent() {
            "CONSISTENT"
        } else {
            "INCONSISTENT"
        }
    }
}

impl ValuationSystem {
    /// Variables are named in order of first appearance.
    pub fn from_equations(equations: Vec<RowEquation>) -> Self {
        let mut variables: Vec<String> = Vec::new();
        for eq in &equations {
            for v in &eq.factors {
                if !variables.contains(v) {
                    variables.push(v.clone());
                }
            }
        }
        Self::with_variables(variables, equations)
    }

    fn with_variables(variables: Vec<String>, equations: Vec<RowEquation>) -> Self {
        let index: BTreeMap<&str, usize> = variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut system = Gf2System::new(variables.len());
        for eq in &equations {
            system.push(eq.factors.iter().map(|v| index[v.as_str()]), eq.sign < 0);
        }
        ValuationSystem {
            variables,
            system,
            equations,
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn system(&self) -> &Gf2System {
        &self.system
    }

    pub fn equations(&self) -> &[RowEquation] {
        &self.equations
    }

    pub fn provenance(&self) -> Vec<&str> {
        self.equations.iter().map(|e| e.origin.as_str()).collect()
    }

    /// Copy with the right-hand side of `row` replaced.
    pub fn with_sign(&self, row: usize, sign: i8) -> Self {
        let mut equations = self.equations.clone();
        equations[row].sign = sign;
        Self::with_variables(self.variables.clone(), equations)
    }

    /// Copy keeping only the listed rows.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let equations = rows.iter().map(|&r| self.equations[r].clone()).collect();
        Self::from_equations(equations)
    }

    /// Multiplies the listed equations. `Some(sign)` when every `ν` cancels,
    /// leaving `1 = sign`.
    pub fn replay(&self, rows: &BTreeSet<usize>) -> Option<i8> {
        let mut parity: BTreeMap<&str, bool> = BTreeMap::new();
        let mut sign = 1i8;
        for &r in rows {
            let eq = &self.equations[r];
            for v in &eq.factors {
                *parity.entry(v.as_str()).or_default() ^= true;
            }
            sign *= eq.sign;
        }
        parity.values().all(|odd| !odd).then_some(sign)
    }

    pub fn decide(&self) -> ValuationReport {
        match gf2_solve(&self.system) {
            Gf2Solution::Consistent(set) => ValuationReport::Consistent {
                dimension: set.dimension(),
                valuations: set.solutions.map(|sols| {
                    sols.iter()
                        .map(|s| {
                            s.to_bools()
                                .into_iter()
                                .map(|b| if b { -1 } else { 1 })
                                .collect()
                        })
                        .collect()
                }),
            },
            Gf2Solution::Inconsistent(certificate) => {
                let mut derivation: Vec<String> = certificate
                    .rows
                    .iter()
                    .map(|&r| format!("[{}] {}", self.equations[r].origin, self.equations[r]))
                    .collect();
                let rows: Vec<String> = certificate
                    .rows
                    .iter()
                    .map(|r| (r + 1).to_string())
                    .collect();
                derivation.push(format!(
                    "multiplying rows {}: every ν(·) occurs an even number of times",
                    rows.join(", ")
                ));
                let sign = self
                    .replay(&certificate.rows)
                    .expect("certificate rows cancel");
                derivation.push(format!("1 = {}", if sign < 0 { "−1" } else { "1" }));
                ValuationReport::Inconsistent {
                    certificate,
                    derivation,
                }
            }
        }
    }
}

/// One row per context whose ordered product is `±I`: the values of the
/// members multiply to that sign.
pub fn context_system(contexts: &[ContextSpec]) -> Result<ValuationSystem, ParityError> {
    let mut equations = Vec::new();
    for (c, ctx) in contexts.iter().enumerate() {
        let p = ctx.product();
        let sign = match (p.is_scalar(), p.letter_sign()) {
            (true, Some(s)) => s,
            _ => return Err(ParityError::NotScalarProduct(c)),
        };
        equations.push(RowEquation {
            factors: ctx.labels(),
            sign,
            origin: format!("C{}", c + 1),
        });
    }
    Ok(ValuationSystem::from_equations(equations))
}

/// The ten pentagram observables under its five lines. Every right-hand
/// side comes from multiplying the operators of the line.
pub fn mermin_system() -> ValuationSystem {
    context_system(&pentagram_contexts()).expect("pentagram lines multiply to ±I")
}

fn sorted_labels(contexts: &[ContextSpec]) -> Vec<String> {
    let set: BTreeSet<String> = contexts.iter().flat_map(|c| c.labels()).collect();
    set.into_iter().collect()
}

/// One row per context: the members multiply to the eigenvalue of their
/// product on `state`. Variables are sorted by label.
pub fn state_dependent_system(
    state: &ScaledVector,
    contexts: &[ContextSpec],
) -> Result<ValuationSystem, ParityError> {
    let mut equations = Vec::new();
    for (c, ctx) in contexts.iter().enumerate() {
        let p = ctx.product();
        let sign = eigenvalue_of(&p, state)?.ok_or_else(|| ParityError::NotStabilised {
            context: c,
            product: p.label(),
        })?;
        equations.push(RowEquation {
            factors: ctx.labels(),
            sign,
            origin: format!("C{}", c + 1),
        });
    }
    Ok(ValuationSystem::with_variables(
        sorted_labels(contexts),
        equations,
    ))
}

/// Single-qubit factors of `p` as indexed labels (`X1`, `Y3`, ...).
pub fn local_factors(p: &PauliOp) -> Vec<String> {
    p.support()
        .into_iter()
        .map(|j| format!("{}{}", p.letter(j).as_char(), j + 1))
        .collect()
}

/// Treats every element of a closed set of Hermitian Pauli operators as a
/// stabiliser: its local factors multiply to its sign.
pub fn avn_system(subgroup: &[PauliOp]) -> Result<ValuationSystem, ParityError> {
    let members: BTreeSet<PauliOp> = subgroup.iter().copied().collect();
    for a in subgroup {
        if !a.is_hermitian() {
            return Err(ParityError::NotHermitian(a.to_string()));
        }
        for b in subgroup {
            if !members.contains(&multiply(a, b)?) {
                return Err(ParityError::NotClosed(a.to_string(), b.to_string()));
            }
        }
    }
    let mut equations = Vec::new();
    let mut labels = BTreeSet::new();
    for s in &members {
        if s.is_identity() {
            continue;
        }
        let factors = local_factors(s);
        labels.extend(factors.iter().cloned());
        equations.push(RowEquation {
            factors,
            sign: s.letter_sign().expect("Hermitian"),
            origin: s.to_string(),
        });
    }
    Ok(ValuationSystem::with_variables(
        labels.into_iter().collect(),
        equations,
    ))
}
