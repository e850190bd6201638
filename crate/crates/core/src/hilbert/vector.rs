use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::HilbertError;
use crate::exactkernel::{format_gaussian, format_rational, GaussianRational, Rational};

/// A vector stored as Gaussian-rational coordinates plus a squared scale:
/// the vector it denotes is `coords / sqrt(scale2)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ScaledVector {
    coords: Vec<GaussianRational>,
    scale2: Rational,
}

impl ScaledVector {
    pub fn new(coords: Vec<GaussianRational>, scale2: Rational) -> Result<Self, HilbertError> {
        if !scale2.is_positive() {
            return Err(HilbertError::BadScale);
        }
        if coords.is_empty() || !coords.len().is_power_of_two() {
            return Err(HilbertError::DimensionMismatch {
                expected: 2,
                found: coords.len(),
            });
        }
        Ok(ScaledVector { coords, scale2 })
    }

    /// Unit vector along `coords` (the scale is the squared norm).
    pub fn ray(coords: Vec<GaussianRational>) -> Result<Self, HilbertError> {
        let norm2 = norm2(&coords);
        if norm2.is_zero() {
            return Err(HilbertError::ZeroVector);
        }
        Self::new(coords, norm2)
    }

    /// `(|0…0⟩ + |1…1⟩)/√2` on `n` qubits.
    pub fn ghz(n: usize) -> Self {
        let dim = 1usize << n;
        let mut coords = vec![GaussianRational::zero(); dim];
        coords[0] = GaussianRational::one();
        coords[dim - 1] = GaussianRational::one();
        ScaledVector {
            coords,
            scale2: Rational::from_integer(BigInt::from(2)),
        }
    }

    /// Computational basis state `|index⟩`; qubit 1 is the most significant bit.
    pub fn basis_state(n: usize, index: usize) -> Self {
        let mut coords = vec![GaussianRational::zero(); 1 << n];
        coords[index] = GaussianRational::one();
        ScaledVector {
            coords,
            scale2: Rational::one(),
        }
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    pub fn scale2(&self) -> &Rational {
        &self.scale2
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn qubits(&self) -> usize {
        self.coords.len().trailing_zeros() as usize
    }

    /// Same ray, every coordinate multiplied by `factor` (scale adjusted).
    pub fn rescaled(&self, factor: &GaussianRational) -> Result<Self, HilbertError> {
        if factor.is_zero() {
            return Err(HilbertError::ZeroVector);
        }
        Self::new(
            self.coords.iter().map(|c| c * factor).collect(),
            &self.scale2 * factor.norm_sqr(),
        )
    }

    /// Coordinate inner product `⟨self|other⟩` (scales ignored).
    pub fn inner(&self, other: &ScaledVector) -> GaussianRational {
        inner(&self.coords, &other.coords)
    }

    pub fn is_orthogonal(&self, other: &ScaledVector) -> bool {
        self.inner(other).is_zero()
    }

    /// Projective equality: `self = λ·other` for some nonzero λ.
    pub fn same_ray(&self, other: &ScaledVector) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let Some(k) = self.coords.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        if other.coords[k].is_zero() {
            return false;
        }
        (0..self.dim()).all(|i| {
            self.coords[i].clone() * &other.coords[k] == other.coords[i].clone() * &self.coords[k]
        })
    }

    /// Squared norm of the denoted vector, `⟨c|c⟩ / scale2`.
    pub fn norm2(&self) -> Rational {
        norm2(&self.coords) / &self.scale2
    }
}

pub(crate) fn inner(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x.conj() * y)
        .fold(GaussianRational::zero(), |acc, v| acc + v)
}

pub(crate) fn norm2(a: &[GaussianRational]) -> Rational {
    a.iter()
        .map(|x| x.norm_sqr())
        .fold(Rational::zero(), |acc, v| acc + v)
}

/// Rescales so the first nonzero coordinate is a positive integer and all
/// coordinates are coprime Gaussian integers (coprime as plain integers of
/// their real and imaginary parts).
pub(crate) fn primitive(coords: &[GaussianRational]) -> Vec<GaussianRational> {
    let Some(first) = coords.iter().find(|c| !c.is_zero()) else {
        return coords.to_vec();
    };
    let first = first.clone();
    let mut v: Vec<GaussianRational> = coords.iter().map(|c| c / &first).collect();
    let mut lcm = BigInt::one();
    for c in &v {
        lcm = lcm.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let l = Rational::from_integer(lcm);
    for c in v.iter_mut() {
        c.re *= &l;
        c.im *= &l;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c.re.numer()).gcd(c.im.numer());
    }
    if !g.is_zero() && !g.is_one() {
        let g = Rational::from_integer(g);
        for c in v.iter_mut() {
            c.re /= &g;
            c.im /= &g;
        }
    }
    v
}

impl fmt::Debug for ScaledVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(format_gaussian).collect();
        write!(f, "[{}]/√{}", c.join(", "), format_rational(&self.scale2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactkernel::{gauss, gauss_int, int, rat};

    #[test]
    fn ghz_is_unit() {
        let g = ScaledVector::ghz(3);
        assert_eq!(g.dim(), 8);
        assert_eq!(g.qubits(), 3);
        assert_eq!(g.scale2(), &int(2));
        assert_eq!(g.norm2(), int(1));
    }

    #[test]
    fn projective_equality_and_rescaling() {
        let a = ScaledVector::ray(vec![gauss_int(1, 0), gauss_int(0, 1)]).unwrap();
        let b = a.rescaled(&gauss(rat(-3, 2), int(1))).unwrap();
        assert!(a.same_ray(&b));
        assert_eq!(b.norm2(), int(1));
        let c = ScaledVector::ray(vec![gauss_int(1, 0), gauss_int(0, -1)]).unwrap();
        assert!(!a.same_ray(&c));
        assert!(a.is_orthogonal(&c));
    }

    #[test]
    fn primitive_clears_denominators() {
        let v = vec![
            gauss(rat(-1, 8), int(0)),
            gauss(rat(1, 8), int(0)),
            gauss(int(0), rat(1, 4)),
        ];
        let p = primitive(&v);
        assert_eq!(p, vec![gauss_int(1, 0), gauss_int(-1, 0), gauss_int(0, -2)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            ScaledVector::ray(vec![gauss_int(0, 0); 2]),
            Err(HilbertError::ZeroVector)
        );
        assert_eq!(
            ScaledVector::new(vec![gauss_int(1, 0); 2], int(0)),
            Err(HilbertError::BadScale)
        );
        assert!(ScaledVector::new(vec![gauss_int(1, 0); 3], int(1)).is_err());
    }
}
