//! Weyl-form canonical commutation relations for three degrees of freedom,
//! specialised to the parameter choice that makes every `U(p_i)`, `V(q_i)`
//! pair anticommute.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactkernel::{format_rational, int, Rational};

/// Degree of freedom index, 0..3.
pub type Dof = usize;

/// `U(±p_i)` or `V(±q_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeylLetter {
    U(Dof, i64),
    V(Dof, i64),
}

impl fmt::Display for WeylLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, var, dof, k) = match *self {
            WeylLetter::U(d, k) => ("U", "p", d, k),
            WeylLetter::V(d, k) => ("V", "q", d, k),
        };
        let coeff = match k {
            1 => String::new(),
            -1 => "-".to_string(),
            k => k.to_string(),
        };
        write!(f, "{name}({coeff}{var}{})", dof + 1)
    }
}

/// `e^{iπ·phase} · ∏_i U(p_i)^{u_i} V(q_i)^{v_i}`, with all `U` factors of a
/// degree of freedom to the left of its `V` factors. Different degrees of
/// freedom commute.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylWord {
    phase: Rational,
    u: [i64; 3],
    v: [i64; 3],
}

impl Default for WeylWord {
    fn default() -> Self {
        Self::identity()
    }
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord {
            phase: Rational::zero(),
            u: [0; 3],
            v: [0; 3],
        }
    }

    pub fn new(phase: Rational, u: [i64; 3], v: [i64; 3]) -> Self {
        WeylWord {
            phase: reduce_mod_two(phase),
            u,
            v,
        }
    }

    pub fn letter(l: WeylLetter) -> Self {
        let mut w = Self::identity();
        match l {
            WeylLetter::U(d, k) => w.u[d] = k,
            WeylLetter::V(d, k) => w.v[d] = k,
        }
        w
    }

    pub fn phase(&self) -> &Rational {
        &self.phase
    }

    pub fn u_exponents(&self) -> [i64; 3] {
        self.u
    }

    pub fn v_exponents(&self) -> [i64; 3] {
        self.v
    }

    pub fn is_scalar(&self) -> bool {
        self.u == [0; 3] && self.v == [0; 3]
    }

    /// `±1` when the word is a scalar with integer phase.
    pub fn scalar_sign(&self) -> Option<i8> {
        if !self.is_scalar() {
            return None;
        }
        if self.phase.is_zero() {
            Some(1)
        } else if self.phase.is_one() {
            Some(-1)
        } else {
            None
        }
    }

    fn letters_string(&self) -> String {
        let mut parts = Vec::new();
        for d in 0..3 {
            if self.u[d] != 0 {
                parts.push(format!("U(p{})^{}", d + 1, self.u[d]));
            }
            if self.v[d] != 0 {
                parts.push(format!("V(q{})^{}", d + 1, self.v[d]));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase.is_zero() {
            f.write_str(&self.letters_string())
        } else {
            write!(
                f,
                "e^(iπ·{}) {}",
                format_rational(&self.phase),
                self.letters_string()
            )
        }
    }
}

fn reduce_mod_two(phase: Rational) -> Rational {
    let two = int(2);
    let q = (&phase / &two).floor();
    phase - q * two
}

/// Product `a·b` for commutation angles `angles[i]`, meaning
/// `V(q_i) U(p_i) = e^{iπ·angles[i]} U(p_i) V(q_i)`.
pub fn weyl_multiply_with(a: &WeylWord, b: &WeylWord, angles: &[Rational; 3]) -> WeylWord {
    let mut phase = a.phase.clone() + &b.phase;
    for (d, angle) in angles.iter().enumerate() {
        // Moving V^{a.v} rightwards past U^{b.u}: a.v·b.u elementary swaps.
        let swaps = a.v[d] * b.u[d];
        if swaps != 0 {
            phase += angle * int(swaps);
        }
    }
    WeylWord::new(
        phase,
        [a.u[0] + b.u[0], a.u[1] + b.u[1], a.u[2] + b.u[2]],
        [a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2]],
    )
}

/// Product with `p_i q_i` an odd multiple of π: every swap costs `-1`.
pub fn weyl_multiply(a: &WeylWord, b: &WeylWord) -> WeylWord {
    weyl_multiply_with(a, b, &[int(1), int(1), int(1)])
}

/// Product in the abelianised group (all swaps free).
pub fn weyl_multiply_abelian(a: &WeylWord, b: &WeylWord) -> WeylWord {
    weyl_multiply_with(a, b, &[int(0), int(0), int(0)])
}

use WeylLetter::{U, V};

/// Arguments of ν in the four FUNC equations, degree of freedom `i`
/// written as index `i-1`. The third factor of the third equation is taken
/// as `V(+q3)` so that each `V(q_i)` occurs once with each sign.
pub const CLIFTON_EQUATIONS: [[WeylLetter; 3]; 4] = [
    [U(0, -1), U(1, -1), U(2, -1)],
    [V(0, 1), V(1, 1), U(2, 1)],
    [V(0, -1), U(1, 1), V(2, 1)],
    [U(0, 1), V(1, -1), V(2, -1)],
];

/// The same four equations with the signs exactly as printed.
const PRINTED_EQUATIONS: [[WeylLetter; 3]; 4] = [
    [U(0, -1), U(1, -1), U(2, -1)],
    [V(0, 1), V(1, 1), U(2, 1)],
    [V(0, -1), U(1, 1), V(2, -1)],
    [U(0, 1), V(1, -1), V(2, -1)],
];

/// The product as printed in the final operator identity (third factor uses
/// `U(-p2)`).
const PRINTED_PRODUCT: [[WeylLetter; 3]; 4] = [
    [U(0, -1), U(1, -1), U(2, -1)],
    [V(0, 1), V(1, 1), U(2, 1)],
    [V(0, -1), U(1, -1), V(2, -1)],
    [U(0, 1), V(1, -1), V(2, -1)],
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliftonReport {
    /// Product of the right-hand sides (scalars, so order-free): `+1` when
    /// every ν-value cancels against its inverse.
    pub func_value: Option<i8>,
    /// Product of the left-hand operators in normal order.
    pub operator_value: Option<i8>,
    pub equations: Vec<String>,
    pub operator_product: String,
    pub notes: Vec<String>,
}

impl CliftonReport {
    pub fn is_contradiction(&self) -> bool {
        matches!((self.func_value, self.operator_value), (Some(a), Some(b)) if a != b)
    }
}

fn word_of(letters: &[WeylLetter]) -> WeylWord {
    letters.iter().fold(WeylWord::identity(), |acc, l| {
        weyl_multiply(&acc, &WeylWord::letter(*l))
    })
}

fn func_product(equations: &[&[WeylLetter; 3]]) -> Option<i8> {
    let mut net = [[0i64; 3]; 2];
    for eq in equations {
        for l in eq.iter() {
            match *l {
                U(d, k) => net[0][d] += k,
                V(d, k) => net[1][d] += k,
            }
        }
    }
    (net == [[0; 3]; 2]).then_some(1)
}

fn evaluate(
    equations: &[&[WeylLetter; 3]],
    mul: fn(&WeylWord, &WeylWord) -> WeylWord,
) -> (Option<i8>, WeylWord) {
    let product = equations
        .iter()
        .map(|eq| word_of(&eq[..]))
        .fold(WeylWord::identity(), |acc, w| mul(&acc, &w));
    (func_product(equations), product)
}

fn render_equation(eq: &[WeylLetter; 3]) -> String {
    let args: Vec<String> = eq.iter().map(|l| l.to_string()).collect();
    let rhs: Vec<String> = args.iter().map(|a| format!("ν({a})")).collect();
    format!("ν({}) = {}", args.join(""), rhs.join(""))
}

fn report(mul: fn(&WeylWord, &WeylWord) -> WeylWord) -> CliftonReport {
    let all: Vec<&[WeylLetter; 3]> = CLIFTON_EQUATIONS.iter().collect();
    let (func_value, product) = evaluate(&all, mul);
    let printed: Vec<&[WeylLetter; 3]> = PRINTED_EQUATIONS.iter().collect();
    let printed_product: Vec<&[WeylLetter; 3]> = PRINTED_PRODUCT.iter().collect();
    let residue = |eqs: &[&[WeylLetter; 3]]| evaluate(eqs, weyl_multiply).1;
    let notes = vec![
        format!(
            "as printed, the four equations use V(-q3) twice; their operator product is {}",
            residue(&printed)
        ),
        format!(
            "as printed, the final product writes U(-p2) in its third factor; that product is {}",
            residue(&printed_product)
        ),
        "third equation evaluated with V(q3), which makes every letter cancel".to_string(),
    ];
    CliftonReport {
        func_value,
        operator_value: product.scalar_sign(),
        equations: CLIFTON_EQUATIONS.iter().map(render_equation).collect(),
        operator_product: product.to_string(),
        notes,
    }
}

/// Multiplies the four FUNC equations two ways: right-hand sides as
/// commuting scalars (`+1`) and left-hand operators under the anticommuting
/// Weyl relations (`-1`).
pub fn clifton_contradiction() -> CliftonReport {
    report(weyl_multiply)
}

/// Control run in which `U` and `V` commute.
pub fn clifton_abelianised() -> CliftonReport {
    report(weyl_multiply_abelian)
}

/// Whether the equations selected by `mask` (bit `k` = equation `k`) alone
/// yield `+1 = -1`.
pub fn clifton_subset_contradiction(mask: u8) -> bool {
    let chosen: Vec<&[WeylLetter; 3]> = CLIFTON_EQUATIONS
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    let (func, product) = evaluate(&chosen, weyl_multiply);
    matches!((func, product.scalar_sign()), (Some(a), Some(b)) if a != b)
}

impl WeylWord {
    /// Inverse under [`weyl_multiply`].
    pub fn inverse(&self) -> WeylWord {
        let bare = WeylWord::new(Rational::zero(), self.u.map(|e| -e), self.v.map(|e| -e));
        // (U^u V^v)^{-1} = V^{-v} U^{-u} = e^{iπ·Σ u_i v_i} U^{-u} V^{-v}
        let swaps: i64 = (0..3).map(|d| self.u[d] * self.v[d]).sum();
        let parity = if swaps.is_odd() { int(1) } else { int(0) };
        WeylWord::new(-self.phase.clone() + parity, bare.u, bare.v)
    }
}
