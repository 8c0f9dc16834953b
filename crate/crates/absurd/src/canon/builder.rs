//! Construction pipeline for canonical absurd numbers.
//!
//! All constructors funnel through [`Builder`]: contributions accumulate in a
//! base -> exponent map, then `finish` refines the large bases into a
//! pairwise-coprime set (splitting on nontrivial gcds against each other, the
//! coefficient's unfactored parts, and any caller-supplied context), roots out
//! perfect powers, absorbs integer exponent parts into the coefficient, and
//! tags the survivors.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numkernel::{
    factor_with_primes, floor_rational, max_perfect_power, rational_from_big, unsigned_parts,
    Rational,
};

use super::{AbsurdNumber, ArithmeticError, BaseClass, Config, Factor};

pub(super) struct Builder {
    coefficient: Rational,
    exponents: BTreeMap<BigUint, Rational>,
    /// Extra integers the result must be coprime-refined against.
    context: Vec<BigUint>,
}

impl Builder {
    pub fn new() -> Self {
        Builder {
            coefficient: Rational::one(),
            exponents: BTreeMap::new(),
            context: Vec::new(),
        }
    }

    pub fn mul_coefficient(&mut self, r: &Rational) {
        self.coefficient *= r;
    }

    /// Multiplies in n^alpha for an integer n >= 1: trial division pulls out
    /// the small primes, the cofactor is reduced to its maximal root.
    pub fn mul_integer_power(&mut self, n: &BigUint, alpha: &Rational, cfg: &Config) {
        debug_assert!(!n.is_zero());
        if n.is_one() || alpha.is_zero() {
            return;
        }
        let parts = factor_with_primes(n, cfg.primes());
        for &(p, mult) in &parts.small_factors {
            self.push_exponent(BigUint::from(p), alpha * Rational::from_integer(mult.into()));
        }
        if !parts.cofactor.is_one() {
            let power = max_perfect_power(&parts.cofactor, cfg.primality_fast_path());
            self.push_exponent(
                power.root,
                alpha * Rational::from_integer(power.exponent.into()),
            );
        }
    }

    /// Multiplies in r^alpha for a positive rational r.
    pub fn mul_rational_power(&mut self, r: &Rational, alpha: &Rational, cfg: &Config) {
        debug_assert!(r.is_positive());
        let (num, den) = unsigned_parts(r);
        self.mul_integer_power(&num, alpha, cfg);
        self.mul_integer_power(&den, &-alpha.clone(), cfg);
    }

    /// Re-ingests the factors of an existing number, scaled by alpha.
    pub fn mul_absurd_factors(&mut self, a: &AbsurdNumber, alpha: &Rational, cfg: &Config) {
        for f in &a.factors {
            self.mul_integer_power(&f.base, &(&f.exponent * alpha), cfg);
        }
    }

    pub fn add_context(&mut self, ints: impl IntoIterator<Item = BigUint>) {
        self.context.extend(ints.into_iter().filter(|n| !n.is_one()));
    }

    fn push_exponent(&mut self, base: BigUint, exp: Rational) {
        debug_assert!(base >= BigUint::from(2u32));
        let slot = self.exponents.entry(base).or_insert_with(Rational::zero);
        *slot += exp;
    }

    pub fn finish(mut self, cfg: &Config) -> Result<AbsurdNumber, ArithmeticError> {
        if self.coefficient.is_zero() {
            return Ok(AbsurdNumber::zero());
        }
        let phat = BigUint::from(cfg.phat());

        // Refine every base above the trial-division bound against the others,
        // the coefficient's unfactored parts, and the caller's context.
        let mut inputs: Vec<BigUint> = self
            .exponents
            .keys()
            .filter(|b| **b > phat)
            .cloned()
            .collect();
        inputs.extend(coefficient_cofactor_parts(&self.coefficient, cfg));
        inputs.append(&mut self.context);
        let basis = coprime_basis(inputs);

        let mut refined: BTreeMap<BigUint, Rational> = BTreeMap::new();
        for (base, exp) in self.exponents {
            if exp.is_zero() {
                continue;
            }
            if base <= phat {
                *refined.entry(base).or_insert_with(Rational::zero) += exp;
                continue;
            }
            for (atom, mult) in factor_over_basis(&base, &basis) {
                // An atom may itself be a perfect power once splits expose it.
                let (root, k) = if atom > cfg.quasi_threshold() {
                    let p = max_perfect_power(&atom, cfg.primality_fast_path());
                    (p.root, p.exponent)
                } else {
                    (atom, 1)
                };
                let scale = Rational::from_integer((mult * k).into());
                *refined.entry(root).or_insert_with(Rational::zero) += &exp * scale;
            }
        }

        // Integer exponent parts belong to the coefficient.
        let mut factors = Vec::new();
        for (base, exp) in refined {
            if exp.is_zero() {
                continue;
            }
            let whole = floor_rational(&exp);
            let fraction = &exp - Rational::from_integer(whole.clone());
            if !whole.is_zero() {
                self.coefficient *= rational_power(&base, &whole)?;
            }
            if !fraction.is_zero() {
                let class = if base <= cfg.quasi_threshold() {
                    BaseClass::Prime
                } else {
                    BaseClass::QuasiPrime
                };
                factors.push(Factor { base, class, exponent: fraction });
            }
        }
        if self.coefficient.is_zero() {
            // Unreachable from nonzero input, but keep the invariant airtight.
            return Ok(AbsurdNumber::zero());
        }
        let result = AbsurdNumber { coefficient: self.coefficient, factors };
        debug_assert_eq!(result.check_invariants(cfg), Ok(()));
        Ok(result)
    }
}

/// base^whole as an exact rational, guarding against absurdly large blowup.
fn rational_power(base: &BigUint, whole: &num_bigint::BigInt) -> Result<Rational, ArithmeticError> {
    let magnitude =
        u32::try_from(whole.magnitude().clone()).map_err(|_| ArithmeticError::ExponentTooLarge)?;
    if base.bits().saturating_mul(u64::from(magnitude)) > 40_000_000 {
        return Err(ArithmeticError::ExponentTooLarge);
    }
    let powered = rational_from_big(base.pow(magnitude).into(), 1.into());
    Ok(if whole.is_negative() { powered.recip() } else { powered })
}

/// Parts of the coefficient with every prime factor above the bound.
pub(super) fn coefficient_cofactor_parts(c: &Rational, cfg: &Config) -> Vec<BigUint> {
    let (num, den) = unsigned_parts(c);
    [num, den]
        .into_iter()
        .filter(|n| !n.is_zero() && !n.is_one())
        .map(|n| factor_with_primes(&n, cfg.primes()).cofactor)
        .filter(|n| !n.is_one())
        .collect()
}

/// Pairwise-coprime set over which every input factors completely.
///
/// Repeatedly splits members on nontrivial gcds; terminates because every
/// split strictly lowers the total count of prime factors with multiplicity.
pub(super) fn coprime_basis(inputs: Vec<BigUint>) -> Vec<BigUint> {
    let mut basis: Vec<BigUint> = Vec::new();
    let mut work: Vec<BigUint> = inputs;
    'outer: while let Some(x) = work.pop() {
        if x.is_one() {
            continue;
        }
        for i in 0..basis.len() {
            let g = x.gcd(&basis[i]);
            if g.is_one() {
                continue;
            }
            if g == basis[i] {
                // Existing atom divides x: peel one copy and retry.
                work.push(&x / &g);
            } else {
                // Proper split of the atom (and of x when it shares only part).
                let old = basis.swap_remove(i);
                work.push(&old / &g);
                if x != g {
                    work.push(&x / &g);
                }
                work.push(g);
            }
            continue 'outer;
        }
        basis.push(x);
    }
    basis.sort();
    basis
}

/// Multiplicity of each basis atom in x. Panics if x does not factor over the
/// basis, which cannot happen for inputs of the `coprime_basis` call.
pub(super) fn factor_over_basis(x: &BigUint, basis: &[BigUint]) -> Vec<(BigUint, u32)> {
    let mut rest = x.clone();
    let mut out = Vec::new();
    for atom in basis {
        let mut mult = 0u32;
        loop {
            let (q, r) = rest.div_rem(atom);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((atom.clone(), mult));
        }
    }
    assert!(rest.is_one(), "{x} does not factor over the refined basis");
    out
}
