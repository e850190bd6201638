//! Exact linear algebra on (C²)^⊗n with Gaussian-rational entries: Pauli
//! matrices, joint eigenbases of commuting involutions, Born probabilities,
//! empirical models induced by states, and the dimension of the algebra a
//! set of Pauli operators generates.
//!
//! Basis ordering: qubit 1 is the most significant bit of the basis index,
//! so `|q1 q2 q3⟩` sits at index `4·q1 + 2·q2 + q3`.

mod matrix;
mod vector;

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

pub use matrix::{rank, ExactMatrix};
pub use vector::ScaledVector;

use crate::exactkernel::{gauss_int, GaussianRational, Rational};
use crate::pauli::{commutes, subgroup_generate, PauliError, PauliOp};
use crate::scenario::{assignment_of, EmpiricalModel, MeasurementCover, ScenarioError};
use vector::{inner, primitive};

/// Largest qubit count for which dense matrices are built.
pub const MAX_MATRIX_QUBITS: usize = 12;
/// Largest qubit count accepted by [`generated_algebra_dimension`].
pub const MAX_ALGEBRA_QUBITS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("{0} qubits exceeds the size guard of {1}")]
    TooLarge(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scale must be positive")]
    BadScale,
    #[error("zero vector is not a ray")]
    ZeroVector,
    #[error("empty context")]
    EmptyContext,
    #[error("{0} and {1} do not commute")]
    NotCommuting(String, String),
    #[error("{0} is not a Hermitian involution")]
    NotInvolution(String),
    #[error("outcome has {found} entries, context has {expected} observables")]
    OutcomeLength { expected: usize, found: usize },
    #[error("outcome values must be +1 or -1")]
    BadOutcome,
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

/// A set of pairwise-commuting Hermitian Pauli involutions on a common
/// number of qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextSpec {
    observables: Vec<PauliOp>,
}

impl ContextSpec {
    pub fn new(observables: Vec<PauliOp>) -> Result<Self, HilbertError> {
        let first = observables.first().ok_or(HilbertError::EmptyContext)?;
        let n = first.qubits();
        for (i, a) in observables.iter().enumerate() {
            if a.qubits() != n {
                return Err(PauliError::Arity {
                    left: n,
                    right: a.qubits(),
                }
                .into());
            }
            if !a.is_hermitian() {
                return Err(HilbertError::NotInvolution(a.label()));
            }
            for b in &observables[..i] {
                if !commutes(a, b)? {
                    return Err(HilbertError::NotCommuting(b.label(), a.label()));
                }
            }
        }
        Ok(ContextSpec { observables })
    }

    pub fn observables(&self) -> &[PauliOp] {
        &self.observables
    }

    pub fn qubits(&self) -> usize {
        self.observables[0].qubits()
    }

    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observables.is_empty()
    }

    /// Ordered product of the observables.
    pub fn product(&self) -> PauliOp {
        crate::pauli::product(&self.observables).expect("nonempty, uniform arity")
    }

    pub fn labels(&self) -> Vec<String> {
        self.observables.iter().map(PauliOp::label).collect()
    }
}

fn i_power(k: u8) -> GaussianRational {
    match k % 4 {
        0 => gauss_int(1, 0),
        1 => gauss_int(0, 1),
        2 => gauss_int(-1, 0),
        _ => gauss_int(0, -1),
    }
}

/// Bit masks of `p` over basis indices (qubit 1 = most significant bit).
fn index_masks(p: &PauliOp) -> (usize, usize) {
    let n = p.qubits();
    let mut xm = 0usize;
    let mut zm = 0usize;
    for j in 0..n {
        let bit = 1usize << (n - 1 - j);
        if p.xbits() >> j & 1 == 1 {
            xm |= bit;
        }
        if p.zbits() >> j & 1 == 1 {
            zm |= bit;
        }
    }
    (xm, zm)
}

pub fn to_matrix(p: &PauliOp) -> Result<ExactMatrix, HilbertError> {
    let n = p.qubits();
    if n > MAX_MATRIX_QUBITS {
        return Err(HilbertError::TooLarge(n, MAX_MATRIX_QUBITS));
    }
    let dim = 1usize << n;
    let (xm, zm) = index_masks(p);
    let mut m = ExactMatrix::zeros(dim);
    for c in 0..dim {
        let sign = if (zm & c).count_ones() % 2 == 1 { 2 } else { 0 };
        m.set(c ^ xm, c, i_power(p.phase() + sign));
    }
    Ok(m)
}

/// `p·v` without materialising the matrix.
pub fn pauli_apply(
    p: &PauliOp,
    v: &[GaussianRational],
) -> Result<Vec<GaussianRational>, HilbertError> {
    let dim = 1usize << p.qubits();
    if v.len() != dim {
        return Err(HilbertError::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    let (xm, zm) = index_masks(p);
    let mut out = vec![GaussianRational::zero(); dim];
    for (c, value) in v.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        let sign = if (zm & c).count_ones() % 2 == 1 { 2 } else { 0 };
        out[c ^ xm] = value * i_power(p.phase() + sign);
    }
    Ok(out)
}

/// `Some(±1)` when `state` is an exact eigenvector of `p` with that
/// eigenvalue.
pub fn eigenvalue_of(p: &PauliOp, state: &ScaledVector) -> Result<Option<i8>, HilbertError> {
    let image = pauli_apply(p, state.coords())?;
    if image.as_slice() == state.coords() {
        return Ok(Some(1));
    }
    if image
        .iter()
        .zip(state.coords())
        .all(|(a, b)| *a == -b.clone())
    {
        return Ok(Some(-1));
    }
    Ok(None)
}

/// One joint eigenvector with its eigenvalue pattern (in context order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointEigenvector {
    pub ray: ScaledVector,
    pub eigenvalues: Vec<i8>,
    /// The joint eigenspace containing this ray has dimension > 1.
    pub degenerate: bool,
}

fn half_projector(a: &ExactMatrix, sign: i8) -> ExactMatrix {
    let id = ExactMatrix::identity(a.dim());
    let half = GaussianRational::new(Rational::new(1.into(), 2.into()), Rational::zero());
    let sum = if sign > 0 { id.add(a) } else { id.sub(a) };
    sum.scale(&half)
}

/// Orthogonal eigenbasis shared by every observable of `ctx`, grouped by
/// joint eigenvalue pattern; patterns are visited `+` before `-`.
pub fn joint_eigenbasis(ctx: &ContextSpec) -> Result<Vec<JointEigenvector>, HilbertError> {
    let n = ctx.qubits();
    if n > MAX_MATRIX_QUBITS {
        return Err(HilbertError::TooLarge(n, MAX_MATRIX_QUBITS));
    }
    let mats: Vec<ExactMatrix> = ctx
        .observables()
        .iter()
        .map(to_matrix)
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut stack: Vec<(ExactMatrix, Vec<i8>)> = vec![(ExactMatrix::identity(1 << n), Vec::new())];
    // Depth-first with `-` pushed first so `+` branches pop first.
    while let Some((proj, pattern)) = stack.pop() {
        let depth = pattern.len();
        if depth == mats.len() {
            let basis = orthogonal_basis(proj.column_space());
            let degenerate = basis.len() > 1;
            for v in basis {
                out.push(JointEigenvector {
                    ray: ScaledVector::ray(v)?,
                    eigenvalues: pattern.clone(),
                    degenerate,
                });
            }
            continue;
        }
        for sign in [-1i8, 1] {
            let next = proj.mul(&half_projector(&mats[depth], sign));
            if !next.is_zero() {
                let mut p = pattern.clone();
                p.push(sign);
                stack.push((next, p));
            }
        }
    }
    Ok(out)
}

fn orthogonal_basis(vectors: Vec<Vec<GaussianRational>>) -> Vec<Vec<GaussianRational>> {
    let mut basis: Vec<Vec<GaussianRational>> = Vec::new();
    for v in vectors {
        let mut w = v;
        for u in &basis {
            let coeff = inner(u, &w) / inner(u, u);
            if coeff.is_zero() {
                continue;
            }
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= &coeff * ui;
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            basis.push(primitive(&w));
        }
    }
    basis
}

/// `⟨ψ| ∏ (1 + s_j A_j)/2 |ψ⟩ / ⟨ψ|ψ⟩`, exactly.
pub fn born_probability(
    state: &ScaledVector,
    ctx: &ContextSpec,
    outcome: &[i8],
) -> Result<Rational, HilbertError> {
    let dim = 1usize << ctx.qubits();
    if state.dim() != dim {
        return Err(HilbertError::DimensionMismatch {
            expected: dim,
            found: state.dim(),
        });
    }
    if outcome.len() != ctx.len() {
        return Err(HilbertError::OutcomeLength {
            expected: ctx.len(),
            found: outcome.len(),
        });
    }
    let half = GaussianRational::new(Rational::new(1.into(), 2.into()), Rational::zero());
    let mut v = state.coords().to_vec();
    for (a, &s) in ctx.observables().iter().zip(outcome) {
        if s != 1 && s != -1 {
            return Err(HilbertError::BadOutcome);
        }
        let av = pauli_apply(a, &v)?;
        v = v
            .iter()
            .zip(&av)
            .map(|(x, y)| {
                if s > 0 {
                    (x + y) * &half
                } else {
                    (x - y) * &half
                }
            })
            .collect();
    }
    let num = inner(state.coords(), &v);
    let den = inner(state.coords(), state.coords());
    debug_assert!(num.im.is_zero(), "projector expectation must be real");
    Ok(num.re / den.re)
}

/// Empirical model realised by `state` under the contexts in `cover`.
/// Observables are named by their indexed labels (`X1`, `Y2`, ...) and
/// sorted by label; each table follows its context's own order.
pub fn empirical_model_from_state(
    state: &ScaledVector,
    cover: &[ContextSpec],
) -> Result<EmpiricalModel, HilbertError> {
    let mut observables: Vec<PauliOp> = Vec::new();
    for ctx in cover {
        for a in ctx.observables() {
            if !observables.contains(a) {
                observables.push(*a);
            }
        }
    }
    observables.sort_by_key(PauliOp::label);
    let names: Vec<String> = observables.iter().map(PauliOp::label).collect();
    let contexts: Vec<Vec<usize>> = cover
        .iter()
        .map(|ctx| {
            ctx.observables()
                .iter()
                .map(|a| {
                    observables
                        .iter()
                        .position(|b| b == a)
                        .expect("collected above")
                })
                .collect()
        })
        .collect();
    let measurement_cover = MeasurementCover::new(names, contexts)?;
    let tables = cover
        .iter()
        .map(|ctx| {
            (0..1usize << ctx.len())
                .map(|idx| born_probability(state, ctx, &assignment_of(idx, ctx.len())))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EmpiricalModel::new(measurement_cover, tables)?)
}

/// Complex dimension of the algebra generated by `gens` and the identity.
/// Distinct Pauli letter patterns are linearly independent, so this is the
/// number of distinct `(x, z)` pairs in the generated group.
pub fn generated_algebra_dimension(gens: &[PauliOp]) -> Result<usize, HilbertError> {
    let n = gens.first().ok_or(PauliError::NoGenerators)?.qubits();
    if n > MAX_ALGEBRA_QUBITS {
        return Err(HilbertError::TooLarge(n, MAX_ALGEBRA_QUBITS));
    }
    let group = subgroup_generate(gens)?;
    let patterns: BTreeSet<(u64, u64)> = group.iter().map(|p| (p.xbits(), p.zbits())).collect();
    Ok(patterns.len())
}

/// A primitive vector in the joint `+1` eigenspace of `ops`, if that space
/// is nonzero.
pub fn common_stabilised_state(ops: &[PauliOp]) -> Result<Option<ScaledVector>, HilbertError> {
    let n = ops.first().ok_or(PauliError::NoGenerators)?.qubits();
    if n > MAX_MATRIX_QUBITS {
        return Err(HilbertError::TooLarge(n, MAX_MATRIX_QUBITS));
    }
    let mut proj = ExactMatrix::identity(1 << n);
    for p in ops {
        proj = proj.mul(&half_projector(&to_matrix(p)?, 1));
        if proj.is_zero() {
            return Ok(None);
        }
    }
    let col = proj
        .column_space()
        .into_iter()
        .next()
        .expect("nonzero projector");
    Ok(Some(ScaledVector::ray(primitive(&col))?))
}
