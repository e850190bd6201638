//! Exact number types and the two exact solvers everything else leans on:
//! Gaussian elimination over GF(2) with row provenance, and a phase-one
//! rational simplex for linear feasibility.

mod bits;
mod gf2;
mod lp;

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use bits::BitRow;
pub use gf2::{
    gf2_solve, AffineSolutionSet, Certificate, Gf2Solution, Gf2System, ENUMERATION_LIMIT,
};
pub use lp::{lp_feasible, LpOutcome};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// An element of Q(i).
pub type GaussianRational = num_complex::Complex<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("malformed system: row {row} has width {found}, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

pub fn gauss_int(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(int(re), int(im))
}

/// Parses `"p/q"`, `"p"`, with an optional leading minus. Decimal points and
/// exponents are rejected.
pub fn parse_rational(text: &str) -> Result<Rational, KernelError> {
    let bad = || KernelError::BadRational(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let digits_ok = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t),
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            if !digits_ok(n) || !digits_ok(d) {
                return Err(bad());
            }
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Rational::new(BigInt::from_str(n).map_err(|_| bad())?, d)
        }
        None => {
            if !digits_ok(body) {
                return Err(bad());
            }
            Rational::from_integer(BigInt::from_str(body).map_err(|_| bad())?)
        }
    };
    Ok(if sign < 0 { -value } else { value })
}

/// Formats as `p/q`, or `p` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Returns `Some(r)` with `r >= 0` and `r * r == value` when `value` is the
/// square of a rational.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer().sqrt();
    let d = value.denom().sqrt();
    if &(&n * &n) == value.numer() && &(&d * &d) == value.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn format_gaussian(value: &GaussianRational) -> String {
    match (value.re.is_zero(), value.im.is_zero()) {
        (_, true) => format_rational(&value.re),
        (true, false) => format!("{}i", format_rational(&value.im)),
        (false, false) => {
            let sign = if value.im.is_negative() { "-" } else { "+" };
            format!(
                "{}{}{}i",
                format_rational(&value.re),
                sign,
                format_rational(&value.im.abs())
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/4").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("2/8").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        for bad in ["", "0.5", "1/0", "1e3", "/2", "a/b", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = rat(0, 7);
        assert!(z.numer().is_zero());
        assert!(z.denom().is_one());
        assert_eq!(format_rational(&z), "0");
    }

    #[test]
    fn sqrt_of_squares_only() {
        assert_eq!(rational_sqrt(&rat(1, 4)), Some(rat(1, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&rat(-1, 4)), None);
    }

    #[test]
    fn gaussian_formatting() {
        assert_eq!(format_gaussian(&gauss_int(0, -1)), "-1i");
        assert_eq!(format_gaussian(&gauss(rat(1, 2), rat(-1, 2))), "1/2-1/2i");
    }
}
