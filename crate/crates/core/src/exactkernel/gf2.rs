use std::collections::BTreeSet;

use super::{BitRow, KernelError};

/// Consistent systems with at most this many variables get their full
/// solution set listed explicitly.
pub const ENUMERATION_LIMIT: usize = 24;

/// Linear system over GF(2): each row is `coefficients · x = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2System {
    vars: usize,
    rows: Vec<(BitRow, bool)>,
}

impl Gf2System {
    pub fn new(vars: usize) -> Self {
        Gf2System {
            vars,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(vars: usize, rows: Vec<(BitRow, bool)>) -> Result<Self, KernelError> {
        for (i, (coeffs, _)) in rows.iter().enumerate() {
            if coeffs.len() != vars {
                return Err(KernelError::Ragged {
                    row: i,
                    expected: vars,
                    found: coeffs.len(),
                });
            }
        }
        Ok(Gf2System { vars, rows })
    }

    pub fn from_bool_rows(rows: &[(Vec<bool>, bool)]) -> Result<Self, KernelError> {
        let vars = rows.first().map_or(0, |(c, _)| c.len());
        Self::from_rows(
            vars,
            rows.iter()
                .map(|(c, r)| (BitRow::from_bools(c), *r))
                .collect(),
        )
    }

    /// Appends a row whose set variables are `vars` (repeats cancel).
    pub fn push(&mut self, vars: impl IntoIterator<Item = usize>, rhs: bool) {
        self.rows.push((BitRow::from_indices(self.vars, vars), rhs));
    }

    pub fn push_row(&mut self, coeffs: BitRow, rhs: bool) -> Result<(), KernelError> {
        if coeffs.len() != self.vars {
            return Err(KernelError::Ragged {
                row: self.rows.len(),
                expected: self.vars,
                found: coeffs.len(),
            });
        }
        self.rows.push((coeffs, rhs));
        Ok(())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> &[(BitRow, bool)] {
        &self.rows
    }

    pub fn is_satisfied_by(&self, x: &BitRow) -> bool {
        self.rows.iter().all(|(c, r)| c.dot(x) == *r)
    }
}

/// A set of rows whose coefficient vectors XOR to zero while their right-hand
/// sides XOR to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub rows: BTreeSet<usize>,
}

impl Certificate {
    pub fn verify(&self, system: &Gf2System) -> bool {
        if self.rows.iter().any(|&r| r >= system.rows.len()) {
            return false;
        }
        let mut acc = BitRow::zeros(system.vars);
        let mut rhs = false;
        for &r in &self.rows {
            let (c, b) = &system.rows[r];
            acc.xor_assign(c);
            rhs ^= b;
        }
        acc.is_zero() && rhs
    }
}

/// Affine solution space `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub particular: BitRow,
    pub kernel: Vec<BitRow>,
    /// Every solution, present when the variable count is within
    /// [`ENUMERATION_LIMIT`].
    pub solutions: Option<Vec<BitRow>>,
}

impl AffineSolutionSet {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// Number of solutions, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        1u128
            .checked_shl(self.kernel.len() as u32)
            .unwrap_or(u128::MAX)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Solution {
    Consistent(AffineSolutionSet),
    Inconsistent(Certificate),
}

impl Gf2Solution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Gf2Solution::Consistent(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Gf2Solution::Inconsistent(c) => Some(c),
            Gf2Solution::Consistent(_) => None,
        }
    }
}

struct WorkRow {
    coeffs: BitRow,
    rhs: bool,
    provenance: BitRow,
}

pub fn gf2_solve(system: &Gf2System) -> Gf2Solution {
    let n_rows = system.rows.len();
    let mut work: Vec<WorkRow> = system
        .rows
        .iter()
        .enumerate()
        .map(|(i, (c, r))| WorkRow {
            coeffs: c.clone(),
            rhs: *r,
            provenance: BitRow::from_indices(n_rows, [i]),
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0;
    for col in 0..system.vars {
        let Some(found) = (next..work.len()).find(|&r| work[r].coeffs.get(col)) else {
            continue;
        };
        work.swap(next, found);
        let (before, rest) = work.split_at_mut(next);
        let (pivot, after) = rest.split_first_mut().expect("pivot row exists");
        let pivot = &*pivot;
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row.coeffs.get(col) {
                row.coeffs.xor_assign(&pivot.coeffs);
                row.rhs ^= pivot.rhs;
                row.provenance.xor_assign(&pivot.provenance);
            }
        }
        pivots.push(col);
        next += 1;
    }

    // Rows past the pivots have zero coefficients; a set rhs is a contradiction.
    if let Some(bad) = work[next..]
        .iter()
        .filter(|r| r.rhs)
        .min_by_key(|r| r.provenance.count_ones())
    {
        return Gf2Solution::Inconsistent(Certificate {
            rows: bad.provenance.iter_ones().collect(),
        });
    }

    let mut particular = BitRow::zeros(system.vars);
    for (row, &col) in work.iter().zip(&pivots) {
        particular.set(col, row.rhs);
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; system.vars];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let kernel: Vec<BitRow> = (0..system.vars)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut k = BitRow::zeros(system.vars);
            k.set(f, true);
            for (row, &col) in work.iter().zip(&pivots) {
                if row.coeffs.get(f) {
                    k.set(col, true);
                }
            }
            k
        })
        .collect();

    let solutions = (system.vars <= ENUMERATION_LIMIT).then(|| {
        (0u64..1 << kernel.len())
            .map(|mask| {
                let mut x = particular.clone();
                for (i, k) in kernel.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        x.xor_assign(k);
                    }
                }
                x
            })
            .collect()
    });

    Gf2Solution::Consistent(AffineSolutionSet {
        particular,
        kernel,
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(system: &Gf2System) -> Vec<BitRow> {
        (0u64..1 << system.vars())
            .map(|m| {
                BitRow::from_bools(
                    &(0..system.vars())
                        .map(|i| m >> i & 1 == 1)
                        .collect::<Vec<_>>(),
                )
            })
            .filter(|x| system.is_satisfied_by(x))
            .collect()
    }

    #[test]
    fn empty_system_has_all_assignments() {
        let s = Gf2System::new(2);
        let Gf2Solution::Consistent(sol) = gf2_solve(&s) else {
            panic!()
        };
        assert_eq!(sol.count(), 4);
        assert_eq!(sol.solutions.unwrap().len(), 4);
    }

    #[test]
    fn single_parity_row() {
        let mut s = Gf2System::new(2);
        s.push([0, 1], false);
        let Gf2Solution::Consistent(sol) = gf2_solve(&s) else {
            panic!()
        };
        let mut got: Vec<String> = sol
            .solutions
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        got.sort();
        assert_eq!(got, vec!["00", "11"]);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![(BitRow::zeros(3), false), (BitRow::zeros(2), true)];
        assert_eq!(
            Gf2System::from_rows(3, rows),
            Err(KernelError::Ragged {
                row: 1,
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn contradiction_yields_minimal_provenance() {
        // x0 = 0, x1 = 1, x0 + x1 = 0, x2 = 1: only rows 0..=2 are involved.
        let mut s = Gf2System::new(3);
        s.push([0], false);
        s.push([1], true);
        s.push([0, 1], false);
        s.push([2], true);
        let Gf2Solution::Inconsistent(cert) = gf2_solve(&s) else {
            panic!()
        };
        assert!(cert.verify(&s));
        assert_eq!(cert.rows, BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn zero_row_with_set_rhs() {
        let mut s = Gf2System::new(1);
        s.push([], true);
        let cert = gf2_solve(&s).certificate().cloned().unwrap();
        assert_eq!(cert.rows, BTreeSet::from([0]));
    }

    #[test]
    fn large_systems_skip_enumeration() {
        let mut s = Gf2System::new(30);
        s.push([0, 29], true);
        let Gf2Solution::Consistent(sol) = gf2_solve(&s) else {
            panic!()
        };
        assert!(sol.solutions.is_none());
        assert_eq!(sol.dimension(), 29);
        assert!(s.is_satisfied_by(&sol.particular));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_system() -> impl Strategy<Value = Gf2System> {
            (1usize..9).prop_flat_map(|vars| {
                proptest::collection::vec(
                    (
                        proptest::collection::vec(any::<bool>(), vars),
                        any::<bool>(),
                    ),
                    0..10,
                )
                .prop_map(move |rows| {
                    Gf2System::from_rows(
                        vars,
                        rows.into_iter()
                            .map(|(c, r)| (BitRow::from_bools(&c), r))
                            .collect(),
                    )
                    .unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn agrees_with_brute_force(system in arb_system()) {
                let expected = brute_force(&system);
                match gf2_solve(&system) {
                    Gf2Solution::Consistent(sol) => {
                        let mut got = sol.solutions.unwrap();
                        got.sort();
                        let mut want = expected;
                        want.sort();
                        prop_assert_eq!(got, want);
                    }
                    Gf2Solution::Inconsistent(cert) => {
                        prop_assert!(expected.is_empty());
                        prop_assert!(cert.verify(&system));
                    }
                }
            }
        }
    }
}
