use std::collections::{BTreeSet, VecDeque};

use super::{commutes, multiply, Letter, PauliError, PauliOp};

/// Three pairwise-commuting Pauli operators, each with letter-form prefactor
/// `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AvnTriple {
    pub e: PauliOp,
    pub f: PauliOp,
    pub g: PauliOp,
}

impl AvnTriple {
    pub fn new(e: PauliOp, f: PauliOp, g: PauliOp) -> Result<Self, PauliError> {
        for (name, p) in [("e", &e), ("f", &f), ("g", &g)] {
            if p.qubits() != e.qubits() {
                return Err(PauliError::Arity {
                    left: e.qubits(),
                    right: p.qubits(),
                });
            }
            if !p.is_phase_free() {
                return Err(PauliError::InvalidTriple(format!(
                    "{name} = {p} has a global phase"
                )));
            }
        }
        for (a, b) in [(&e, &f), (&e, &g), (&f, &g)] {
            if !commutes(a, b)? {
                return Err(PauliError::InvalidTriple(format!(
                    "{a} and {b} do not commute"
                )));
            }
        }
        Ok(AvnTriple { e, f, g })
    }

    pub fn generators(&self) -> [PauliOp; 3] {
        [self.e, self.f, self.g]
    }

    pub fn verdict(&self) -> AvnVerdict {
        let n = self.e.qubits();
        let mut two_equal_fails_at = None;
        let mut odd_positions = Vec::new();
        for i in 0..n {
            let (a, b, c) = (self.e.letter(i), self.f.letter(i), self.g.letter(i));
            if a != b && b != c && a != c && two_equal_fails_at.is_none() {
                two_equal_fails_at = Some(i);
            }
            // e_i = g_i != f_i with all three non-identity: these are the
            // positions where reordering e·f·g into letter form picks up -1.
            if a == c && a != b && a != Letter::I && b != Letter::I {
                odd_positions.push(i);
            }
        }
        AvnVerdict {
            holds: two_equal_fails_at.is_none() && odd_positions.len() % 2 == 1,
            two_equal_fails_at,
            odd_positions,
        }
    }
}

/// Outcome of the two letterwise AvN conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvnVerdict {
    pub holds: bool,
    /// First qubit (0-based) where e, f, g are pairwise distinct.
    pub two_equal_fails_at: Option<usize>,
    /// Qubits with `e_i = g_i != f_i`, all non-identity.
    pub odd_positions: Vec<usize>,
}

impl AvnVerdict {
    pub fn reason(&self) -> String {
        if let Some(i) = self.two_equal_fails_at {
            return format!(
                "condition 1 fails at qubit {}: all three letters differ",
                i + 1
            );
        }
        let count = self.odd_positions.len();
        if count % 2 == 1 {
            format!("both conditions hold ({count} sign-carrying position(s), odd)")
        } else {
            format!("condition 2 fails: {count} sign-carrying position(s), even")
        }
    }
}

pub fn is_avn_triple(e: PauliOp, f: PauliOp, g: PauliOp) -> Result<AvnVerdict, PauliError> {
    Ok(AvnTriple::new(e, f, g)?.verdict())
}

/// Closure of `gens` under multiplication, identity included, sorted.
pub fn subgroup_generate(gens: &[PauliOp]) -> Result<Vec<PauliOp>, PauliError> {
    let first = gens.first().ok_or(PauliError::NoGenerators)?;
    let n = first.qubits();
    if let Some(bad) = gens.iter().find(|g| g.qubits() != n) {
        return Err(PauliError::Arity {
            left: n,
            right: bad.qubits(),
        });
    }
    let limit = 4usize.saturating_mul(4usize.saturating_pow(n as u32));
    let identity = PauliOp::identity(n);
    let mut seen: BTreeSet<PauliOp> = BTreeSet::from([identity]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = multiply(&p, g)?;
            if seen.insert(q) {
                if seen.len() > limit {
                    return Err(PauliError::GroupTooLarge(limit));
                }
                queue.push_back(q);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
