//! Directed rational interval arithmetic for numeric evaluation.
//!
//! All intermediate intervals here are positive; signs are applied once at
//! the end. Bounds are exact rationals, trimmed after every operation to
//! dyadics with relative error at most 2^-s so numerators stay small.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numkernel::{floor_nth_root, Rational};

/// A closed interval [lo, hi] of positive rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

/// Midpoint plus half-width of an evaluation interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    pub value: Rational,
    pub error: Rational,
}

impl Approximation {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

impl Interval {
    pub fn point(r: &Rational) -> Self {
        Interval { lo: r.clone(), hi: r.clone() }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// Product of two positive intervals.
    pub fn mul(&self, other: &Self) -> Self {
        Interval { lo: &self.lo * &other.lo, hi: &self.hi * &other.hi }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn recip(&self) -> Self {
        assert!(self.lo.is_positive(), "reciprocal of an interval touching zero");
        Interval { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    /// Shrinks both bounds to dyadics, moving lo down and hi up, each by a
    /// relative amount below 2^-s.
    pub fn round_out(&self, s: u32) -> Self {
        Interval { lo: dyadic_down(&self.lo, s), hi: dyadic_up(&self.hi, s) }
    }

    /// Encloses base^exp for a positive rational base with relative width at
    /// most about 2^-s. Integer exponents are exact points.
    pub fn pow_rational(base: &Rational, exp: &Rational, s: u32) -> Self {
        assert!(base.is_positive(), "power of a non-positive base");
        if exp.is_zero() {
            return Interval::point(&Rational::one());
        }
        if exp.is_negative() {
            return Interval::pow_rational(base, &-exp.clone(), s).recip();
        }
        let n = exp.numer().to_u32().expect("exponent numerator too large to evaluate");
        let d = exp.denom().to_u32().expect("exponent denominator too large to evaluate");
        let p = base.numer().magnitude().pow(n);
        let q = base.denom().magnitude().pow(n);
        if d == 1 {
            let exact = Rational::new(BigInt::from(p), BigInt::from(q));
            return Interval::point(&exact);
        }
        // (p/q)^(1/d) = (p q^(d-1))^(1/d) / q; scale the radicand by 2^(s d)
        // so the floor root t brackets the value between t and t+1 at 2^-s.
        let radicand = (&p * q.pow(d - 1)) << (u64::from(s) * u64::from(d));
        let t = floor_nth_root(&radicand, d);
        let denom = BigInt::from(&q << u64::from(s));
        Interval {
            lo: Rational::new(BigInt::from(t.clone()), denom.clone()),
            hi: Rational::new(BigInt::from(t + 1u32), denom),
        }
    }

    pub fn to_approximation(&self) -> Approximation {
        let two = Rational::from_integer(2.into());
        Approximation {
            value: (&self.lo + &self.hi) / &two,
            error: (&self.hi - &self.lo) / &two,
        }
    }
}

/// Largest dyadic m/2^k <= x with relative error below 2^-s; x positive.
fn dyadic_down(x: &Rational, s: u32) -> Rational {
    dyadic(x, s, false)
}

/// Smallest dyadic m/2^k >= x with relative error below 2^-s; x positive.
fn dyadic_up(x: &Rational, s: u32) -> Rational {
    dyadic(x, s, true)
}

fn dyadic(x: &Rational, s: u32, up: bool) -> Rational {
    assert!(x.is_positive());
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    // 2^(e-1) <= x < 2^(e+1), so shifting by k = s - e + 1 puts at least
    // s bits above the point before the division floors or ceils.
    let e = num.bits() as i64 - den.bits() as i64;
    let k = i64::from(s) - e + 1;
    let (shifted_num, shifted_den) = if k >= 0 {
        (num << k as u64, den.clone())
    } else {
        (num.clone(), den << (-k) as u64)
    };
    let m = if up {
        (&shifted_num + &shifted_den - 1u32) / &shifted_den
    } else {
        &shifted_num / &shifted_den
    };
    if k >= 0 {
        Rational::new(BigInt::from(m), BigInt::from(BigUint::one() << k as u64))
    } else {
        Rational::from_integer(BigInt::from(m << (-k) as u64))
    }
}
