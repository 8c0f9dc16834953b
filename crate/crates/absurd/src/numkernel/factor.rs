//! Trial division and budgeted full factorization.

use std::cell::Cell;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::perfect_power::max_perfect_power;
use super::primality::is_probable_prime;

/// Outcome of trial division by all primes up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedFactorization {
    /// (prime, multiplicity) pairs with primes strictly increasing.
    pub small_factors: Vec<(u64, u32)>,
    /// Remaining part with no prime factor at or below the bound; 1 when none.
    pub cofactor: BigUint,
}

/// All primes up to and including `bound`, by Eratosthenes sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = usize::try_from(bound).expect("sieve bound fits in memory");
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Divides out every prime at or below `bound` from `n >= 1`.
pub fn factor_bounded(n: &BigUint, bound: u64) -> BoundedFactorization {
    factor_with_primes(n, &primes_up_to(bound))
}

/// Same as [`factor_bounded`] with a caller-supplied ascending prime list.
pub fn factor_with_primes(n: &BigUint, primes: &[u64]) -> BoundedFactorization {
    assert!(!n.is_zero());
    let mut rest = n.clone();
    let mut small_factors = Vec::new();
    for &p in primes {
        if rest.is_one() {
            break;
        }
        let big_p = BigUint::from(p);
        let mut mult = 0u32;
        loop {
            let (q, r) = rest.div_rem(&big_p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            small_factors.push((p, mult));
        }
    }
    BoundedFactorization { small_factors, cofactor: rest }
}

thread_local! {
    static FULL_FACTOR_CALLS: Cell<u64> = const { Cell::new(0) };
}

/// Number of [`factor_full`] invocations on this thread.
///
/// The canonical arithmetic layer never calls `factor_full`; display-form
/// conversions that need complete factorizations do. The counter lets tests
/// verify the former.
pub fn factor_full_invocations() -> u64 {
    FULL_FACTOR_CALLS.with(|c| c.get())
}

/// Complete factorization of n >= 1 into (prime, multiplicity) pairs with
/// primes strictly increasing, or None when the rho-iteration budget runs out.
pub fn factor_full(n: &BigUint, budget: u64) -> Option<Vec<(BigUint, u32)>> {
    FULL_FACTOR_CALLS.with(|c| c.set(c.get() + 1));
    assert!(!n.is_zero());
    // Small primes first so rho only sees hard composites.
    let pre = factor_bounded(n, 10_000);
    let mut factors: Vec<(BigUint, u32)> = pre
        .small_factors
        .into_iter()
        .map(|(p, m)| (BigUint::from(p), m))
        .collect();
    let mut budget = budget;
    if !pre.cofactor.is_one() {
        factor_hard(pre.cofactor, 1, &mut factors, &mut budget)?;
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Some(factors)
}

/// Factors a number with no small prime divisors, multiplying multiplicities
/// by `outer` (used when recursing into a perfect-power root).
fn factor_hard(
    n: BigUint,
    outer: u32,
    out: &mut Vec<(BigUint, u32)>,
    budget: &mut u64,
) -> Option<()> {
    if n.is_one() {
        return Some(());
    }
    if is_probable_prime(&n) {
        push_merged(out, n, outer);
        return Some(());
    }
    let power = max_perfect_power(&n, true);
    if power.exponent > 1 {
        return factor_hard(power.root, outer * power.exponent, out, budget);
    }
    let divisor = pollard_brent(&n, budget)?;
    let quotient = &n / &divisor;
    factor_hard(divisor, outer, out, budget)?;
    factor_hard(quotient, outer, out, budget)
}

fn push_merged(out: &mut Vec<(BigUint, u32)>, prime: BigUint, mult: u32) {
    if let Some(entry) = out.iter_mut().find(|(p, _)| *p == prime) {
        entry.1 += mult;
    } else {
        out.push((prime, mult));
    }
}

/// Brent-cycle Pollard rho. Returns a nontrivial divisor of composite odd n,
/// or None once `budget` iterations are spent. The budget is shared across
/// restarts and decremented per iteration of the inner cycle.
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let two = BigUint::from(2u32);
    if n.is_even() {
        return Some(two);
    }
    for offset in 1u64.. {
        let c = BigUint::from(offset);
        let mut x = two.clone();
        let mut cycle = 1u64;
        loop {
            let y = x.clone();
            for _ in 0..cycle {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                x = (&x * &x + &c) % n;
                let diff = if x > y { &x - &y } else { &y - &x };
                if diff.is_zero() {
                    break; // cycle closed without a factor; restart with new c
                }
                let g = diff.gcd(n);
                if !g.is_one() {
                    if g == *n {
                        break; // degenerate; restart with new c
                    }
                    return Some(g);
                }
            }
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() || diff.gcd(n) == *n {
                break;
            }
            cycle *= 2;
        }
    }
    None
}
