use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| Error::Config(format!("not a rational number: {s:?}")))
}

/// Parses a strictly positive rational, the only admissible anisotropy `b`.
pub fn parse_positive(s: &str) -> Result<Rational> {
    let r = parse_rational(s)?;
    if !r.is_positive() {
        return Err(Error::Config(format!(
            "expected a positive rational, got {s}"
        )));
    }
    Ok(r)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `r^n` for any integer `n` (negative powers need `r != 0`).
pub fn powi(r: &Rational, n: i32) -> Rational {
    if n >= 0 {
        num_traits::pow(r.clone(), n as usize)
    } else {
        num_traits::pow(r.recip(), (-n) as usize)
    }
}

/// Double factorial `(2l-1)!!`, with `(-1)!! = 1`.
pub fn odd_double_factorial(l: u32) -> BigInt {
    (1..=l).fold(BigInt::one(), |acc, k| acc * BigInt::from(2 * k - 1))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
