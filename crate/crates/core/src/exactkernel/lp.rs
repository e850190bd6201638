use num_traits::{One, Signed, Zero};

use super::{KernelError, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// A nonnegative point satisfying every equality exactly.
    Feasible(Vec<Rational>),
    /// The phase-one optimum is positive: `residual` is the least total
    /// violation any nonnegative point can achieve.
    Infeasible { residual: Rational },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }
}

/// Decides whether `{x >= 0 : A x = b}` is nonempty, exactly.
///
/// Phase-one simplex on the artificial-variable tableau with Bland's rule, so
/// it terminates without any anti-cycling perturbation.
pub fn lp_feasible(
    equalities: &[(Vec<Rational>, Rational)],
    vars: usize,
) -> Result<LpOutcome, KernelError> {
    for (i, (row, _)) in equalities.iter().enumerate() {
        if row.len() != vars {
            return Err(KernelError::Ragged {
                row: i,
                expected: vars,
                found: row.len(),
            });
        }
    }
    let m = equalities.len();
    let width = vars + m;

    // tableau[i] = [coefficients over x and artificials | rhs]
    let mut tableau: Vec<Vec<Rational>> = equalities
        .iter()
        .enumerate()
        .map(|(i, (row, rhs))| {
            let flip = rhs.is_negative();
            let mut t: Vec<Rational> = row
                .iter()
                .map(|a| if flip { -a.clone() } else { a.clone() })
                .collect();
            t.extend((0..m).map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            t.push(if flip { -rhs.clone() } else { rhs.clone() });
            t
        })
        .collect();
    let mut basis: Vec<usize> = (vars..width).collect();

    // Reduced costs for minimising the sum of artificials; last entry holds
    // minus the objective value.
    let mut cost = vec![Rational::zero(); width + 1];
    for row in &tableau {
        for j in 0..vars {
            cost[j] -= &row[j];
        }
        cost[width] -= &row[width];
    }

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (r, row) in tableau.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[width] / &row[enter];
            let better = match &leave {
                None => true,
                Some((best_r, best)) => {
                    ratio < *best || (ratio == *best && basis[r] < basis[*best_r])
                }
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // Phase one is bounded below by zero, so an entering column always
        // has a positive entry.
        let (r, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tableau, &mut cost, r, enter);
        basis[r] = enter;
    }

    let objective = -cost[width].clone();
    if objective.is_positive() {
        return Ok(LpOutcome::Infeasible {
            residual: objective,
        });
    }
    let mut x = vec![Rational::zero(); vars];
    for (r, &b) in basis.iter().enumerate() {
        if b < vars {
            x[b] = tableau[r][width].clone();
        }
    }
    Ok(LpOutcome::Feasible(x))
}

fn pivot(tableau: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, c: usize) {
    let p = tableau[r][c].clone();
    if !p.is_one() {
        for v in tableau[r].iter_mut() {
            *v /= &p;
        }
    }
    let pivot_row = tableau[r].clone();
    let eliminate = |row: &mut [Rational]| {
        let f = row[c].clone();
        if f.is_zero() {
            return;
        }
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    };
    for (i, row) in tableau.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(cost);
}
