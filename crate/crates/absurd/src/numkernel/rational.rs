//! Helpers on arbitrary-precision reduced fractions.
//!
//! `Rational` is a reduced `Ratio<BigInt>`: the sign lives in the numerator
//! and the denominator is always positive, which the `num-rational`
//! constructors maintain for us.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};

pub type Rational = num_rational::BigRational;

/// Builds a reduced fraction from machine integers. Panics when `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_from_big(n: BigInt, d: BigInt) -> Rational {
    Rational::new(n, d)
}

/// Greatest rational that divides both arguments with integer quotients:
/// gcd of the numerators over lcm of the denominators.
///
/// Both arguments must be positive.
pub fn gcd_rational(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a.is_positive() && b.is_positive());
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Rational::new(num, den)
}

/// Largest integer not exceeding `r`.
pub fn floor_rational(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// True when `r` has denominator 1.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn big_to_rational(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// Writes `r` as "n/d", or just "n" when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Splits a positive rational into numerator and denominator magnitudes.
pub fn unsigned_parts(r: &Rational) -> (BigUint, BigUint) {
    (
        r.numer().abs().to_biguint().expect("non-negative"),
        r.denom().to_biguint().expect("positive denominator"),
    )
}
