//! Ready-made instances: the pentagram contexts, the GHZ contexts and state,
//! and small reference empirical models.

use crate::exactkernel::{int, rat};
use crate::hilbert::{empirical_model_from_state, ContextSpec, ScaledVector};
use crate::pauli::{product, Letter, PauliOp};
use crate::scenario::{EmpiricalModel, MeasurementCover};

fn single(qubit: usize, letter: Letter) -> PauliOp {
    PauliOp::single(3, qubit, letter)
}

fn triple(a: Letter, b: Letter, c: Letter) -> PauliOp {
    product(&[single(0, a), single(1, b), single(2, c)]).expect("three qubits")
}

fn context(ops: Vec<PauliOp>) -> ContextSpec {
    ContextSpec::new(ops).expect("built-in context is commuting")
}

/// `X1, X2, X3, Z1, Z2, Z3, X1X2X3, X1Z2Z3, Z1X2Z3, Z1Z2X3`.
pub fn pentagram_observables() -> Vec<PauliOp> {
    use Letter::{X, Z};
    let mut ops: Vec<PauliOp> = (0..3).map(|q| single(q, X)).collect();
    ops.extend((0..3).map(|q| single(q, Z)));
    ops.extend([
        triple(X, X, X),
        triple(X, Z, Z),
        triple(Z, X, Z),
        triple(Z, Z, X),
    ]);
    ops
}

/// The five pentagram lines: four `{A, B, C, ABC}` lines and the line of
/// the four products.
pub fn pentagram_contexts() -> Vec<ContextSpec> {
    let o = pentagram_observables();
    vec![
        context(vec![o[0], o[1], o[2], o[6]]),
        context(vec![o[0], o[4], o[5], o[7]]),
        context(vec![o[3], o[1], o[5], o[8]]),
        context(vec![o[3], o[4], o[2], o[9]]),
        context(vec![o[6], o[7], o[8], o[9]]),
    ]
}

/// `{X1,X2,X3}, {X1,Y2,Y3}, {Y1,X2,Y3}, {Y1,Y2,X3}`: the contexts whose
/// products stabilise the GHZ state up to sign.
pub fn ghz_contexts() -> Vec<ContextSpec> {
    use Letter::{X, Y};
    let pattern = [[X, X, X], [X, Y, Y], [Y, X, Y], [Y, Y, X]];
    pattern
        .iter()
        .map(|ls| context((0..3).map(|q| single(q, ls[q])).collect()))
        .collect()
}

/// The same shape with `Z` in place of `Y`.
pub fn ghz_contexts_xz() -> Vec<ContextSpec> {
    use Letter::{X, Z};
    let pattern = [[X, X, X], [X, Z, Z], [Z, X, Z], [Z, Z, X]];
    pattern
        .iter()
        .map(|ls| context((0..3).map(|q| single(q, ls[q])).collect()))
        .collect()
}

/// `(|000⟩ + |111⟩)/√2`.
pub fn ghz_state() -> ScaledVector {
    ScaledVector::ghz(3)
}

/// Born-rule model of the GHZ state under [`ghz_contexts`].
pub fn ghz_model() -> EmpiricalModel {
    empirical_model_from_state(&ghz_state(), &ghz_contexts()).expect("GHZ model")
}

/// Two parties, two binary measurements each, outcomes perfectly
/// correlated except anticorrelated on `(a1, b1)`; weights 1/2.
pub fn pr_box() -> EmpiricalModel {
    let cover = MeasurementCover::from_names(
        &["a0", "a1", "b0", "b1"],
        &[&["a0", "b0"], &["a0", "b1"], &["a1", "b0"], &["a1", "b1"]],
    )
    .expect("fixed cover");
    let h = rat(1, 2);
    let z = int(0);
    let corr = vec![h.clone(), z.clone(), z.clone(), h.clone()];
    let anti = vec![z.clone(), h.clone(), h, z];
    EmpiricalModel::new(cover, vec![corr.clone(), corr.clone(), corr, anti]).expect("normalised")
}

/// Three observables all copying one fair coin, measured in two
/// overlapping contexts.
pub fn shared_coin() -> EmpiricalModel {
    let cover = MeasurementCover::from_names(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]])
        .expect("fixed cover");
    let h = rat(1, 2);
    let z = int(0);
    let copy = vec![h.clone(), z.clone(), z, h];
    EmpiricalModel::new(cover, vec![copy.clone(), copy]).expect("normalised")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagram_shapes() {
        let o = pentagram_observables();
        assert_eq!(o.len(), 10);
        assert_eq!(o[7].to_string(), "XZZ");
        assert_eq!(pentagram_contexts().len(), 5);
    }

    #[test]
    fn ghz_contexts_labels() {
        let labels: Vec<Vec<String>> = ghz_contexts().iter().map(ContextSpec::labels).collect();
        assert_eq!(labels[1], vec!["X1", "Y2", "Y3"]);
        assert_eq!(labels[3], vec!["Y1", "Y2", "X3"]);
    }
}
