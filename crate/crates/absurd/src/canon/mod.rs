//! Canonical internal representation and exact arithmetic.
//!
//! An absurd number is coefficient * product(base_i ^ exponent_i) with the
//! coefficient a reduced rational, every base an integer >= 2 that is not a
//! perfect power, bases pairwise coprime and strictly increasing, and every
//! exponent a reduced rational strictly between 0 and 1. Bases at or below
//! the configured trial-division bound (and cofactors small enough that the
//! bound proves them prime) are certified primes; anything larger is kept as
//! a "quasi prime": treated like a prime until a gcd against some other base
//! or coefficient exposes structure, at which point it splits.
//!
//! Structural identity therefore decides equality of two values built in the
//! same configuration, provided their quasi primes have been refined against
//! each other; `add` and `equals` do that pair refinement internally.

mod approx;
mod builder;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numkernel::{is_integer, primes_up_to, Rational};

pub use approx::{Approximation, Interval};
use builder::{coefficient_cofactor_parts, Builder};

/// Arithmetic configuration, read-only once built.
///
/// Values constructed under different configurations are not comparable:
/// the trial-division bound decides which bases count as certified primes.
#[derive(Debug, Clone)]
pub struct Config {
    phat: u64,
    factor_budget: u64,
    primality_fast_path: bool,
    primes: OnceLock<Vec<u64>>,
}

impl Default for Config {
    fn default() -> Self {
        Config::new(1000, 1_000_000)
    }
}

impl Config {
    /// `phat` is the trial-division bound; `factor_budget` limits the rho
    /// iterations any single full-factorization attempt may spend.
    pub fn new(phat: u64, factor_budget: u64) -> Self {
        assert!((2..=1 << 26).contains(&phat), "trial division bound out of range");
        Config { phat, factor_budget, primality_fast_path: true, primes: OnceLock::new() }
    }

    /// Disables the probable-prime shortcut inside perfect-power decomposition
    /// so Newton application counts are reproducible.
    pub fn without_primality_fast_path(mut self) -> Self {
        self.primality_fast_path = false;
        self
    }

    pub fn phat(&self) -> u64 {
        self.phat
    }

    pub fn factor_budget(&self) -> u64 {
        self.factor_budget
    }

    pub fn primality_fast_path(&self) -> bool {
        self.primality_fast_path
    }

    pub(crate) fn primes(&self) -> &[u64] {
        self.primes.get_or_init(|| primes_up_to(self.phat))
    }

    /// Bases above phat^2 cannot be certified prime by trial division alone.
    pub(crate) fn quasi_threshold(&self) -> BigUint {
        BigUint::from(self.phat) * BigUint::from(self.phat)
    }
}

/// Whether a base is certified prime or merely has no factor <= phat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseClass {
    Prime,
    QuasiPrime,
}

/// One base^exponent factor of a canonical number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    base: BigUint,
    class: BaseClass,
    exponent: Rational,
}

impl Factor {
    pub fn base(&self) -> &BigUint {
        &self.base
    }

    pub fn class(&self) -> BaseClass {
        self.class
    }

    /// Reduced rational strictly between 0 and 1.
    pub fn exponent(&self) -> &Rational {
        &self.exponent
    }
}

/// A rational multiple of a product of fractional powers of integers, in
/// canonical form. Derived equality is structural; use [`AbsurdNumber::equals`]
/// for value equality, which refines quasi primes across the pair first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsurdNumber {
    coefficient: Rational,
    factors: Vec<Factor>,
}

/// Result of adding two absurd numbers: a single number when the factor lists
/// agree, otherwise the terms stay separate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Commensurability {
    Commensurate(AbsurdNumber),
    Incommensurate,
}

impl Commensurability {
    pub fn commensurate(self) -> Option<AbsurdNumber> {
        match self {
            Commensurability::Commensurate(a) => Some(a),
            Commensurability::Incommensurate => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithmeticError {
    #[error("power of a non-positive rational")]
    NonPositiveBase,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("fractional power of a negative value")]
    NegativeBaseFractionalPower,
    #[error("integer exponent part too large to expand")]
    ExponentTooLarge,
}

impl AbsurdNumber {
    pub fn zero() -> Self {
        AbsurdNumber { coefficient: Rational::zero(), factors: Vec::new() }
    }

    pub fn one() -> Self {
        AbsurdNumber { coefficient: Rational::one(), factors: Vec::new() }
    }

    /// Rationals embed as a bare coefficient; nothing is factored until a
    /// fractional power forces it.
    pub fn from_rational(r: &Rational) -> Self {
        AbsurdNumber { coefficient: r.clone(), factors: Vec::new() }
    }

    /// Canonical form of r^alpha for a positive rational r.
    pub fn normalize_power(
        r: &Rational,
        alpha: &Rational,
        cfg: &Config,
    ) -> Result<Self, ArithmeticError> {
        if !r.is_positive() {
            return Err(ArithmeticError::NonPositiveBase);
        }
        let mut b = Builder::new();
        b.mul_rational_power(r, alpha, cfg);
        b.finish(cfg)
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// True when the value is a plain rational (no fractional powers).
    pub fn is_rational(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn neg(&self) -> Self {
        AbsurdNumber { coefficient: -self.coefficient.clone(), factors: self.factors.clone() }
    }

    pub fn mul(&self, other: &Self, cfg: &Config) -> Self {
        if self.is_zero() || other.is_zero() {
            return AbsurdNumber::zero();
        }
        let mut b = Builder::new();
        b.mul_coefficient(&self.coefficient);
        b.mul_coefficient(&other.coefficient);
        let one = Rational::one();
        b.mul_absurd_factors(self, &one, cfg);
        b.mul_absurd_factors(other, &one, cfg);
        b.finish(cfg).expect("exponents below 2 cannot overflow")
    }

    /// Raises to a rational power. Zero handling: 0^0 = 1, 0^positive = 0,
    /// 0^negative is an error. Negative values allow integer exponents only.
    pub fn pow(&self, alpha: &Rational, cfg: &Config) -> Result<Self, ArithmeticError> {
        if alpha.is_zero() {
            return Ok(AbsurdNumber::one());
        }
        if self.is_zero() {
            return if alpha.is_positive() {
                Ok(AbsurdNumber::zero())
            } else {
                Err(ArithmeticError::ZeroToNegativePower)
            };
        }
        let negative = self.coefficient.is_negative();
        if negative && !is_integer(alpha) {
            return Err(ArithmeticError::NegativeBaseFractionalPower);
        }
        let mut b = Builder::new();
        b.mul_rational_power(&self.coefficient.abs(), alpha, cfg);
        b.mul_absurd_factors(self, alpha, cfg);
        let mut out = b.finish(cfg)?;
        if negative && alpha.numer().is_odd() {
            out = out.neg();
        }
        Ok(out)
    }

    /// Sum when the refined factor lists agree syntactically, otherwise the
    /// pair is incommensurate and stays a formal sum.
    pub fn add(&self, other: &Self, cfg: &Config) -> Commensurability {
        if self.is_zero() {
            return Commensurability::Commensurate(other.clone());
        }
        if other.is_zero() {
            return Commensurability::Commensurate(self.clone());
        }
        let (a, b) = AbsurdNumber::refine_pair(self, other, cfg);
        if a.factors != b.factors {
            return Commensurability::Incommensurate;
        }
        let coefficient = &a.coefficient + &b.coefficient;
        if coefficient.is_zero() {
            return Commensurability::Commensurate(AbsurdNumber::zero());
        }
        // The summed coefficient may expose new gcd structure; re-finish.
        let mut builder = Builder::new();
        builder.mul_coefficient(&coefficient);
        builder.mul_absurd_factors(&a, &Rational::one(), cfg);
        Commensurability::Commensurate(
            builder.finish(cfg).expect("exponents below 1 cannot overflow"),
        )
    }

    pub fn sub(&self, other: &Self, cfg: &Config) -> Commensurability {
        self.add(&other.neg(), cfg)
    }

    /// Value equality: structural identity after refining the pair together.
    pub fn equals(&self, other: &Self, cfg: &Config) -> bool {
        if self == other {
            return true;
        }
        let (a, b) = AbsurdNumber::refine_pair(self, other, cfg);
        a == b
    }

    /// Re-runs canonicalization on a single number. Idempotent; exposed mostly
    /// so tests can assert that construction already reached the fixpoint.
    pub fn coprime_refine(&self, cfg: &Config) -> Self {
        let (out, _) = AbsurdNumber::refine_pair(self, &AbsurdNumber::one(), cfg);
        out
    }

    /// Refines the quasi primes of two numbers against each other so that
    /// their factor lists become comparable, without changing either value.
    pub fn refine_pair(a: &Self, b: &Self, cfg: &Config) -> (Self, Self) {
        let rebuild = |x: &Self, other: &Self| -> Self {
            if x.is_zero() {
                return AbsurdNumber::zero();
            }
            let mut builder = Builder::new();
            builder.mul_coefficient(&x.coefficient);
            builder.mul_absurd_factors(x, &Rational::one(), cfg);
            builder.add_context(refinement_inputs(other, cfg));
            builder.finish(cfg).expect("exponents below 1 cannot overflow")
        };
        (rebuild(a, b), rebuild(b, a))
    }

    /// Stable machine form: "num/den" coefficient, then "base^num/den" per
    /// factor, all joined by "*".
    pub fn canonical_string(&self) -> String {
        let mut out = format!("{}/{}", self.coefficient.numer(), self.coefficient.denom());
        for f in &self.factors {
            out.push_str(&format!("*{}^{}/{}", f.base, f.exponent.numer(), f.exponent.denom()));
        }
        out
    }

    /// Parses the [`canonical_string`](Self::canonical_string) format. The
    /// result is re-canonicalized, so any product of rational powers in that
    /// syntax is accepted.
    pub fn parse_canonical(s: &str, cfg: &Config) -> Result<Self, CanonicalParseError> {
        let bad = |m: &str| CanonicalParseError { message: m.to_string() };
        let mut pieces = s.split('*');
        let coefficient = parse_ratio(pieces.next().unwrap_or(""))
            .ok_or_else(|| bad("expected num/den coefficient"))?;
        let mut b = Builder::new();
        b.mul_coefficient(&coefficient);
        for piece in pieces {
            let (base, exp) = piece.split_once('^').ok_or_else(|| bad("expected base^num/den"))?;
            let base: BigUint =
                base.parse().map_err(|_| bad("factor base must be a positive integer"))?;
            if base < BigUint::from(2u32) {
                return Err(bad("factor base must be at least 2"));
            }
            let exp = parse_ratio(exp).ok_or_else(|| bad("expected num/den exponent"))?;
            b.mul_integer_power(&base, &exp, cfg);
        }
        b.finish(cfg).map_err(|e| bad(&e.to_string()))
    }

    /// High-precision interval evaluation; the returned error bound is within
    /// two units in the last place at the requested precision.
    pub fn eval_approx(&self, precision_bits: u32) -> Approximation {
        assert!(precision_bits >= 53, "precision below f64 is not supported");
        if self.is_zero() {
            return Approximation { value: Rational::zero(), error: Rational::zero() };
        }
        let work = precision_bits + 16;
        let mut acc = Interval::point(&self.coefficient.abs());
        for f in &self.factors {
            let base = Rational::from_integer(f.base.clone().into());
            acc = acc.mul(&Interval::pow_rational(&base, &f.exponent, work)).round_out(work);
        }
        if self.coefficient.is_negative() {
            acc = acc.neg();
        }
        acc.to_approximation()
    }

    /// Verifies every representation invariant; Ok(()) or a description of
    /// the first violation. Called via debug_assert after construction.
    pub fn check_invariants(&self, cfg: &Config) -> Result<(), String> {
        let fail = |m: String| Err(m);
        if self.coefficient.is_zero() && !self.factors.is_empty() {
            return fail("zero keeps factors".into());
        }
        let two = BigUint::from(2u32);
        let threshold = cfg.quasi_threshold();
        for f in &self.factors {
            if f.base < two {
                return fail(format!("base {} below 2", f.base));
            }
            if !f.exponent.is_positive() || f.exponent >= Rational::one() {
                return fail(format!("exponent {} outside (0,1)", f.exponent));
            }
            let expected = if f.base <= threshold { BaseClass::Prime } else { BaseClass::QuasiPrime };
            if f.class != expected {
                return fail(format!("base {} misclassified as {:?}", f.base, f.class));
            }
            if crate::numkernel::max_perfect_power(&f.base, true).exponent != 1 {
                return fail(format!("base {} is a perfect power", f.base));
            }
        }
        for pair in self.factors.windows(2) {
            if pair[0].base >= pair[1].base {
                return fail("bases not strictly increasing".into());
            }
        }
        for i in 0..self.factors.len() {
            for j in i + 1..self.factors.len() {
                if !self.factors[i].base.gcd(&self.factors[j].base).is_one() {
                    return fail(format!(
                        "bases {} and {} share a factor",
                        self.factors[i].base, self.factors[j].base
                    ));
                }
            }
        }
        // Quasi primes may equal a whole cofactor part of the coefficient
        // (p * p^(1/2) is legitimate) but must not share a proper divisor.
        for part in coefficient_cofactor_parts(&self.coefficient, cfg) {
            for f in &self.factors {
                if f.base <= cfg.phat().into() {
                    continue;
                }
                let g = f.base.gcd(&part);
                if !g.is_one() && g != f.base {
                    return fail(format!(
                        "base {} shares proper divisor {} with coefficient part {}",
                        f.base, g, part
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Everything in `a` that pair refinement must see: bases above the trial
/// bound plus the coefficient's unfactored parts.
fn refinement_inputs(a: &AbsurdNumber, cfg: &Config) -> Vec<BigUint> {
    if a.is_zero() {
        return Vec::new();
    }
    let phat = BigUint::from(cfg.phat());
    let mut out: Vec<BigUint> =
        a.factors.iter().map(|f| f.base.clone()).filter(|b| *b > phat).collect();
    out.extend(coefficient_cofactor_parts(&a.coefficient, cfg));
    out
}

fn parse_ratio(s: &str) -> Option<Rational> {
    let (num, den) = s.split_once('/')?;
    let num: num_bigint::BigInt = num.parse().ok()?;
    let den: num_bigint::BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

impl fmt::Display for AbsurdNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// Invalid canonical serialization input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid canonical form: {message}")]
pub struct CanonicalParseError {
    pub message: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::rational;

    fn cfg() -> Config {
        Config::default()
    }

    fn np(n: i64, d: i64, en: i64, ed: i64) -> AbsurdNumber {
        AbsurdNumber::normalize_power(&rational(n, d), &rational(en, ed), &cfg()).unwrap()
    }

    #[test]
    fn power_of_rational_splits_into_prime_factors() {
        let x = np(28, 15, 2, 3);
        assert_eq!(x.canonical_string(), "2/15*2^1/3*3^1/3*5^1/3*7^2/3");
        assert!(x.factors().iter().all(|f| f.class() == BaseClass::Prime));
    }

    #[test]
    fn product_of_surds_merges_exponents() {
        let x = np(30, 1, 1, 2).mul(&np(42, 1, 1, 3), &cfg());
        assert_eq!(x.canonical_string(), "1/1*2^5/6*3^5/6*5^1/2*7^1/3");
    }

    #[test]
    fn integer_exponent_parts_move_to_the_coefficient() {
        assert_eq!(np(2, 1, 5, 2).canonical_string(), "4/1*2^1/2");
        assert_eq!(np(5, 1, -5, 3).canonical_string(), "1/25*5^1/3");
    }

    #[test]
    fn commensurate_difference_combines_coefficients() {
        let c = cfg();
        let x = np(2, 1, 5, 2).mul(&np(5, 1, -5, 3), &c);
        let y = np(2, 1, 1, 2).mul(&np(5, 1, -2, 3), &c);
        match x.sub(&y, &c) {
            Commensurability::Commensurate(d) => {
                assert_eq!(d.canonical_string(), "-1/25*2^1/2*5^1/3");
            }
            Commensurability::Incommensurate => panic!("terms share their surd part"),
        }
        assert!(x.sub(&x, &c).commensurate().unwrap().is_zero());
    }

    #[test]
    fn incommensurate_terms_stay_apart() {
        let c = cfg();
        assert_eq!(np(2, 1, 1, 2).add(&np(3, 1, 1, 2), &c), Commensurability::Incommensurate);
    }

    #[test]
    fn cube_of_mixed_product_is_rational() {
        let c = cfg();
        let x = AbsurdNumber::from_rational(&rational(2, 15)).mul(&np(1470, 1, 1, 3), &c);
        let cube = x.pow(&rational(3, 1), &c).unwrap();
        assert!(cube.is_rational());
        assert_eq!(cube.canonical_string(), "784/225");
    }

    #[test]
    fn roots_of_perfect_powers_collapse_to_rationals() {
        assert_eq!(np(256, 81, 1, 4).canonical_string(), "4/3");
        assert_eq!(np(152_416_333_181_401, 1, 1, 2).canonical_string(), "12345701/1");
    }

    #[test]
    fn quasi_prime_pair_refines_to_common_form() {
        let c = cfg();
        let p = 1_000_003i64;
        let q = 1_000_033i64;
        let joint = np(p * q, 1, 1, 2);
        assert_eq!(joint.canonical_string(), "1/1*1000036000099^1/2");
        assert_eq!(joint.factors()[0].class(), BaseClass::QuasiPrime);

        let split = np(p, 1, 1, 2).mul(&np(q, 1, 1, 2), &c);
        assert_ne!(joint, split);
        assert!(joint.equals(&split, &c));
        let (a, b) = AbsurdNumber::refine_pair(&joint, &split, &c);
        assert_eq!(a, b);
        assert_eq!(a.canonical_string(), "1/1*1000003^1/2*1000033^1/2");
        assert!(joint.sub(&split, &c).commensurate().unwrap().is_zero());
    }

    #[test]
    fn coefficient_structure_refines_bases() {
        let c = cfg();
        let x = AbsurdNumber::from_rational(&rational(1_000_003, 1))
            .mul(&np(1_000_036_000_099, 1, 1, 2), &c);
        assert_eq!(x.canonical_string(), "1000003/1*1000003^1/2*1000033^1/2");
    }

    #[test]
    fn refinement_is_idempotent() {
        let c = cfg();
        for x in [np(28, 15, 2, 3), np(1_000_036_000_099, 1, 1, 2), AbsurdNumber::one()] {
            assert_eq!(x.coprime_refine(&c), x);
        }
    }

    #[test]
    fn zero_and_sign_rules() {
        let c = cfg();
        let zero = AbsurdNumber::zero();
        assert_eq!(zero.pow(&rational(0, 1), &c).unwrap(), AbsurdNumber::one());
        assert_eq!(
            zero.pow(&rational(-1, 1), &c),
            Err(ArithmeticError::ZeroToNegativePower)
        );
        let neg = AbsurdNumber::from_rational(&rational(-8, 1));
        assert_eq!(
            neg.pow(&rational(1, 3), &c),
            Err(ArithmeticError::NegativeBaseFractionalPower)
        );
        assert_eq!(neg.pow(&rational(2, 1), &c).unwrap().canonical_string(), "64/1");
        assert_eq!(neg.pow(&rational(3, 1), &c).unwrap().canonical_string(), "-512/1");
        assert_eq!(
            AbsurdNumber::normalize_power(&rational(-2, 1), &rational(1, 2), &c),
            Err(ArithmeticError::NonPositiveBase)
        );
        assert_eq!(
            AbsurdNumber::normalize_power(&rational(0, 1), &rational(1, 2), &c),
            Err(ArithmeticError::NonPositiveBase)
        );
    }

    #[test]
    fn reciprocal_cancels_exactly() {
        let c = cfg();
        let x = np(12, 7, 3, 4);
        let inv = x.pow(&rational(-1, 1), &c).unwrap();
        assert_eq!(x.mul(&inv, &c), AbsurdNumber::one());
    }

    #[test]
    fn canonical_string_parses_back() {
        let c = cfg();
        for x in [
            np(28, 15, 2, 3),
            np(1_000_036_000_099, 1, 1, 2),
            np(2, 1, 5, 2).mul(&np(5, 1, -5, 3), &c).neg(),
            AbsurdNumber::from_rational(&rational(-7, 3)),
        ] {
            let parsed = AbsurdNumber::parse_canonical(&x.canonical_string(), &c).unwrap();
            assert_eq!(parsed, x);
        }
        assert!(AbsurdNumber::parse_canonical("junk", &c).is_err());
        assert!(AbsurdNumber::parse_canonical("1/1*4^x", &c).is_err());
    }

    #[test]
    fn approximation_matches_f64_math() {
        let root2 = np(2, 1, 1, 2).eval_approx(64);
        assert!((root2.to_f64() - 2f64.sqrt()).abs() < 1e-15);

        let x = np(28, 15, 2, 3);
        let approx = x.eval_approx(128);
        let expected = (28f64 / 15f64).powf(2.0 / 3.0);
        assert!((approx.to_f64() - expected).abs() < 1e-12);
        // Error bound is relative to the value at the requested precision.
        let bound = &approx.value * rational(1, i64::MAX) * rational(2, 1);
        assert!(approx.error < bound);

        let zero = AbsurdNumber::zero().eval_approx(64);
        assert!(zero.value.is_zero() && zero.error.is_zero());

        let neg = np(5, 1, 1, 3).neg().eval_approx(64);
        assert!((neg.to_f64() + 5f64.powf(1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn invariants_hold_for_constructed_values() {
        let c = cfg();
        for x in [
            np(28, 15, 2, 3),
            np(1_000_036_000_099, 1, 1, 2),
            np(11760, 1, 1, 3),
            AbsurdNumber::zero(),
            AbsurdNumber::from_rational(&rational(-7, 3)),
        ] {
            assert_eq!(x.check_invariants(&c), Ok(()));
        }
    }
}
