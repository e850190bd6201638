//! The n-qubit Pauli group in symplectic form.
//!
//! An element is stored as `i^phase · X^x Z^z` with one X bit and one Z bit
//! per qubit; the X factor of a qubit sits to the left of its Z factor. With
//! that convention `Y = i·X·Z`, and reordering a Z past an X costs a factor
//! of `-1`, which is the whole phase rule of [`multiply`].

mod avn;
mod parse;
mod weyl;

use std::fmt;

use thiserror::Error;

pub use avn::{is_avn_triple, subgroup_generate, AvnTriple, AvnVerdict};
pub use parse::{parse_pauli, ParseError, ParseErrorKind};
pub use weyl::{
    clifton_abelianised, clifton_contradiction, clifton_subset_contradiction, weyl_multiply,
    weyl_multiply_abelian, CliftonReport, Dof, WeylLetter, WeylWord, CLIFTON_EQUATIONS,
};

/// Largest qubit count representable by the packed bit vectors.
pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("arity mismatch: {left} qubits vs {right} qubits")]
    Arity { left: usize, right: usize },
    #[error("qubit count {0} outside 1..={MAX_QUBITS}")]
    QubitCount(usize),
    #[error("empty generator list")]
    NoGenerators,
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("invalid AvN triple: {0}")]
    InvalidTriple(String),
}

/// Single-qubit factor in letter form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOp {
    n: usize,
    x: u64,
    z: u64,
    phase: u8,
}

impl PauliOp {
    pub fn new(n: usize, x: u64, z: u64, phase: u8) -> Result<Self, PauliError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(PauliError::QubitCount(n));
        }
        let mask = Self::mask_for(n);
        Ok(PauliOp {
            n,
            x: x & mask,
            z: z & mask,
            phase: phase % 4,
        })
    }

    fn mask_for(n: usize) -> u64 {
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, 0, 0, 0).expect("qubit count in range")
    }

    /// Letter `letter` on qubit `qubit` (0-based), identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: Letter) -> Self {
        assert!(qubit < n, "qubit {qubit} out of range for {n} qubits");
        Self::from_letters(
            &(0..n)
                .map(|j| if j == qubit { letter } else { Letter::I })
                .collect::<Vec<_>>(),
            1,
        )
        .expect("qubit count in range")
    }

    /// `sign · (letters[0] ⊗ letters[1] ⊗ ...)` with `sign` one of `±1`.
    pub fn from_letters(letters: &[Letter], sign: i8) -> Result<Self, PauliError> {
        let n = letters.len();
        let mut x = 0u64;
        let mut z = 0u64;
        let mut ys = 0u8;
        for (j, l) in letters.iter().enumerate() {
            let (bx, bz) = l.bits();
            x |= (bx as u64) << j;
            z |= (bz as u64) << j;
            ys += (*l == Letter::Y) as u8;
        }
        let base = if sign < 0 { 2 } else { 0 };
        Self::new(n, x, z, (base + ys % 4) % 4)
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn xbits(&self) -> u64 {
        self.x
    }

    pub fn zbits(&self) -> u64 {
        self.z
    }

    /// Exponent `k` of the canonical `i^k` prefactor.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(&self, phase: u8) -> Self {
        PauliOp {
            phase: phase % 4,
            ..*self
        }
    }

    pub fn negate(&self) -> Self {
        self.with_phase(self.phase + 2)
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n).map(|j| self.letter(j)).collect()
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| self.letter(j) != Letter::I)
            .collect()
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// Exponent of `i` in front of the letter-form tensor product.
    pub fn letter_phase(&self) -> u8 {
        let ys = (self.x & self.z).count_ones() as u8;
        (self.phase + 4 - ys % 4) % 4
    }

    /// `Some(±1)` when the letter-form prefactor is real, i.e. the operator
    /// is Hermitian.
    pub fn letter_sign(&self) -> Option<i8> {
        match self.letter_phase() {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.letter_sign().is_some()
    }

    /// Letter form with prefactor `+1`.
    pub fn is_phase_free(&self) -> bool {
        self.letter_phase() == 0
    }

    /// Drops the letter-form prefactor.
    pub fn unsigned(&self) -> Self {
        Self::from_letters(&self.letters(), 1).expect("same qubit count")
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0 && self.phase == 0
    }

    /// Whether this is `±I`, `±iI`.
    pub fn is_scalar(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// `p·p` is always `±I`; returns the sign.
    pub fn square_sign(&self) -> i8 {
        let sq = multiply(self, self).expect("same arity");
        debug_assert!(sq.is_scalar());
        if sq.phase == 0 {
            1
        } else {
            -1
        }
    }

    pub fn same_letters(&self, other: &PauliOp) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Indexed form such as `X1*Z2*Z3` (qubits numbered from 1); identities
    /// fall back to the compact form.
    pub fn label(&self) -> String {
        if self.weight() == 0 {
            return self.to_string();
        }
        let body = self
            .support()
            .into_iter()
            .map(|j| format!("{}{}", self.letter(j).as_char(), j + 1))
            .collect::<Vec<_>>()
            .join("*");
        format!("{}{}", prefix(self.letter_phase()), body)
    }
}

fn prefix(letter_phase: u8) -> &'static str {
    match letter_phase {
        0 => "",
        1 => "i",
        2 => "-",
        _ => "-i",
    }
}

/// Compact letter form with sign prefix, e.g. `XZZ`, `-iY`.
impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(prefix(self.letter_phase()))?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

fn check_arity(p: &PauliOp, q: &PauliOp) -> Result<(), PauliError> {
    if p.n != q.n {
        return Err(PauliError::Arity {
            left: p.n,
            right: q.n,
        });
    }
    Ok(())
}

pub fn multiply(p: &PauliOp, q: &PauliOp) -> Result<PauliOp, PauliError> {
    check_arity(p, q)?;
    let swaps = (p.z & q.x).count_ones() as u8;
    Ok(PauliOp {
        n: p.n,
        x: p.x ^ q.x,
        z: p.z ^ q.z,
        phase: (p.phase + q.phase + 2 * (swaps % 2)) % 4,
    })
}

/// Ordered product of a nonempty list.
pub fn product(ops: &[PauliOp]) -> Result<PauliOp, PauliError> {
    let (first, rest) = ops.split_first().ok_or(PauliError::NoGenerators)?;
    rest.iter().try_fold(*first, |acc, q| multiply(&acc, q))
}

pub fn commutes(p: &PauliOp, q: &PauliOp) -> Result<bool, PauliError> {
    check_arity(p, q)?;
    Ok(((p.x & q.z).count_ones() + (p.z & q.x).count_ones()).is_multiple_of(2))
}
