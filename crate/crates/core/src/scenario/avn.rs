use std::collections::BTreeSet;

use super::{classify, ContextualityClass, EmpiricalModel, Level, ScenarioError};
use crate::hilbert::{eigenvalue_of, empirical_model_from_state, ContextSpec, ScaledVector};
use crate::parity::{avn_system, ValuationReport, ValuationSystem};
use crate::pauli::{commutes, is_avn_triple, subgroup_generate, AvnVerdict, PauliOp};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvnReport {
    /// Letterwise verdict, present when exactly three generators were given.
    pub triple: Option<AvnVerdict>,
    /// Eigenvalue of each generator on the state.
    pub eigenvalues: Vec<i8>,
    /// Group generated by the generators signed by their eigenvalues, so
    /// the state is a `+1` eigenvector of every member.
    pub group: Vec<PauliOp>,
    pub system: ValuationSystem,
    pub parity: ValuationReport,
    pub model: EmpiricalModel,
    pub class: ContextualityClass,
}

impl AvnReport {
    pub fn is_all_versus_nothing(&self) -> bool {
        !self.parity.is_consistent() && self.class.level == Level::Strong
    }
}

fn precondition(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Precondition(msg.into())
}

/// For each non-identity element, the set of its single-qubit factors;
/// sets contained in another are dropped.
pub fn local_contexts(group: &[PauliOp]) -> Vec<ContextSpec> {
    let mut sets: Vec<BTreeSet<PauliOp>> = Vec::new();
    for s in group.iter().filter(|s| !s.is_scalar()) {
        let n = s.qubits();
        let set: BTreeSet<PauliOp> = s
            .support()
            .into_iter()
            .map(|j| PauliOp::single(n, j, s.letter(j)))
            .collect();
        if !sets.contains(&set) {
            sets.push(set);
        }
    }
    let maximal: Vec<&BTreeSet<PauliOp>> = sets
        .iter()
        .filter(|s| !sets.iter().any(|t| t != *s && s.is_subset(t)))
        .collect();
    maximal
        .into_iter()
        .map(|s| ContextSpec::new(s.iter().copied().collect()).expect("distinct qubits commute"))
        .collect()
}

/// Builds the stabiliser group of `state` from `gens`, decides its parity
/// system, and classifies the model of `state` on the local contexts.
pub fn avn_check(gens: &[PauliOp], state: &ScaledVector) -> Result<AvnReport, ScenarioError> {
    let first = gens.first().ok_or_else(|| precondition("no generators"))?;
    let n = first.qubits();
    for (i, a) in gens.iter().enumerate() {
        if a.qubits() != n {
            return Err(precondition(format!(
                "{a} acts on {} qubits, expected {n}",
                a.qubits()
            )));
        }
        if !a.is_hermitian() {
            return Err(precondition(format!("{a} is not Hermitian")));
        }
        for b in &gens[..i] {
            if !commutes(a, b).expect("same arity") {
                return Err(precondition(format!("{b} and {a} do not commute")));
            }
        }
    }
    let triple = if let [e, f, g] = gens {
        let verdict = is_avn_triple(*e, *f, *g).map_err(|err| precondition(err.to_string()))?;
        if !verdict.holds {
            return Err(precondition(format!(
                "not an AvN triple: {}",
                verdict.reason()
            )));
        }
        Some(verdict)
    } else {
        None
    };
    if state.dim() != 1 << n {
        return Err(precondition(format!(
            "state has dimension {}, expected {}",
            state.dim(),
            1 << n
        )));
    }
    let mut eigenvalues = Vec::new();
    let mut signed = Vec::new();
    for g in gens {
        let lambda = eigenvalue_of(g, state)
            .map_err(|err| precondition(err.to_string()))?
            .ok_or_else(|| precondition(format!("state is not an eigenvector of {g}")))?;
        eigenvalues.push(lambda);
        signed.push(if lambda < 0 { g.negate() } else { *g });
    }
    let group = subgroup_generate(&signed).map_err(|err| precondition(err.to_string()))?;
    let system = avn_system(&group).map_err(|err| precondition(err.to_string()))?;
    let parity = system.decide();
    let contexts = local_contexts(&group);
    if contexts.is_empty() {
        return Err(precondition(
            "generators are all scalar; no local observables",
        ));
    }
    let model = empirical_model_from_state(state, &contexts)
        .map_err(|err| precondition(err.to_string()))?;
    let class = classify(&model)?;
    Ok(AvnReport {
        triple,
        eigenvalues,
        group,
        system,
        parity,
        model,
        class,
    })
}
