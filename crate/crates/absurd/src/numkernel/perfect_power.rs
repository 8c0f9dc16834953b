//! Maximal perfect-power decomposition without factoring.
//!
//! To write n = m^k with the largest possible k we try successive prime
//! roots starting with 2, repeating each prime until it stops working, and
//! advance to the next prime p only while 2^p <= m (a larger p cannot have
//! an integer p-th root above 1). Each attempted root is one Newton
//! application; the counts are observable because they are the whole cost
//! model of this kernel.

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use super::primality::is_probable_prime;
use super::rational::{unsigned_parts, Rational};
use super::root::exact_nth_root;

/// Result of decomposing n as root^exponent with maximal exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectPower {
    pub root: BigUint,
    pub exponent: u32,
    /// Number of Newton root extractions attempted.
    pub newton_applications: u32,
}

/// One attempted prime-root extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootAttempt {
    pub prime: u32,
    pub success: bool,
}

/// Decomposes n >= 2 as root^exponent with exponent maximal.
///
/// With `fast_path` set, numbers that pass a probable-prime test return
/// immediately with exponent 1 and no Newton applications.
pub fn max_perfect_power(n: &BigUint, fast_path: bool) -> PerfectPower {
    max_perfect_power_traced(n, fast_path).0
}

/// Same as [`max_perfect_power`] but also reports every root attempt in order.
pub fn max_perfect_power_traced(n: &BigUint, fast_path: bool) -> (PerfectPower, Vec<RootAttempt>) {
    assert!(*n >= BigUint::from(2u32));
    if fast_path && is_probable_prime(n) {
        return (
            PerfectPower { root: n.clone(), exponent: 1, newton_applications: 0 },
            Vec::new(),
        );
    }
    let mut m = n.clone();
    let mut exponent = 1u32;
    let mut trace = Vec::new();
    let mut p = 2u32;
    // 2^p > m, i.e. p >= bits(m), means no further prime can work.
    while u64::from(p) < m.bits() {
        loop {
            match exact_nth_root(&m, p) {
                Some(root) => {
                    trace.push(RootAttempt { prime: p, success: true });
                    m = root;
                    exponent *= p;
                }
                None => {
                    trace.push(RootAttempt { prime: p, success: false });
                    break;
                }
            }
        }
        p = next_prime(p);
    }
    let applications = u32::try_from(trace.len()).expect("attempt count fits in u32");
    (
        PerfectPower { root: m, exponent, newton_applications: applications },
        trace,
    )
}

/// Smallest prime greater than `p`.
pub fn next_prime(p: u32) -> u32 {
    let mut q = p + 1;
    while !is_small_prime(q) {
        q += 1;
    }
    q
}

fn is_small_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Decomposes a positive rational r != 1 as root^exponent with exponent maximal.
///
/// The smaller of numerator and denominator is decomposed first; the other
/// side then only needs roots for primes dividing the first exponent.
pub fn max_perfect_power_rational(r: &Rational, fast_path: bool) -> (Rational, u32) {
    let (num, den) = unsigned_parts(r);
    assert!(!num.is_zero() && !r.is_one(), "requires a positive rational != 1");
    if den.is_one() {
        let d = max_perfect_power(&num, fast_path);
        return (big_ratio(d.root, BigUint::one()), d.exponent);
    }
    if num.is_one() {
        let d = max_perfect_power(&den, fast_path);
        return (big_ratio(BigUint::one(), d.root), d.exponent);
    }
    let num_first = num < den;
    let (first, other) = if num_first { (&num, &den) } else { (&den, &num) };
    let d1 = max_perfect_power(first, fast_path);
    if d1.exponent == 1 {
        return (r.clone(), 1);
    }
    // Largest k dividing d1.exponent such that `other` is a k-th power.
    let mut k = 1u32;
    let mut other_root = other.clone();
    for (p, mult) in factor_small(d1.exponent) {
        for _ in 0..mult {
            match exact_nth_root(&other_root, p) {
                Some(root) => {
                    other_root = root;
                    k *= p;
                }
                None => break,
            }
        }
    }
    if k == 1 {
        return (r.clone(), 1);
    }
    let first_root = d1.root.pow(d1.exponent / k);
    let (root_num, root_den) = if num_first { (first_root, other_root) } else { (other_root, first_root) };
    (big_ratio(root_num, root_den), k)
}

/// Exact d-th root of a positive rational, using one root extraction per side.
pub fn exact_rational_root(r: &Rational, d: u32) -> Option<Rational> {
    let (num, den) = unsigned_parts(r);
    let root_num = if num.is_one() { BigUint::one() } else { exact_nth_root(&num, d)? };
    let root_den = if den.is_one() { BigUint::one() } else { exact_nth_root(&den, d)? };
    Some(big_ratio(root_num, root_den))
}

/// Rewrites r^(n/d) as base^(1/m) with m minimal.
///
/// Finds the largest divisor dbar of d with r a perfect dbar-th power, then
/// expands the reduced root to the n-th power: the result is
/// (root^n, d/dbar) with r^(n/d) == root^n ^ (dbar/d).
pub fn max_reciprocal_root(r: &Rational, exponent: &Rational) -> (Rational, u32) {
    let n = exponent.numer();
    let d = u32::try_from(exponent.denom().clone()).expect("exponent denominator fits in u32");
    let mut dbar = 1u32;
    let mut root = r.clone();
    for (p, mult) in factor_small(d) {
        for _ in 0..mult {
            match exact_rational_root(&root, p) {
                Some(s) => {
                    root = s;
                    dbar *= p;
                }
                None => break,
            }
        }
    }
    let n_abs = u32::try_from(n.magnitude().clone()).expect("exponent numerator fits in u32");
    let mut expanded = pow_rational(&root, n_abs);
    if n.is_negative() {
        expanded = expanded.recip();
    }
    (expanded, d / dbar)
}

fn pow_rational(r: &Rational, k: u32) -> Rational {
    let (num, den) = unsigned_parts(r);
    big_ratio(num.pow(k), den.pow(k))
}

fn big_ratio(num: BigUint, den: BigUint) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Trial-division factorization for small machine integers (exponents).
pub fn factor_small(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2u32;
    while p * p <= n {
        if n % p == 0 {
            let mut mult = 0;
            while n % p == 0 {
                n /= p;
                mult += 1;
            }
            out.push((p, mult));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::rational::rational;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn small_cases() {
        let d = max_perfect_power(&big(64), false);
        assert_eq!((d.root, d.exponent), (big(2), 6));
        let d = max_perfect_power(&big(36), false);
        assert_eq!((d.root, d.exponent), (big(6), 2));
        let d = max_perfect_power(&big(72), false);
        assert_eq!((d.root, d.exponent), (big(72), 1));
        let d = max_perfect_power(&big(11760), false);
        assert_eq!((d.root, d.exponent), (big(11760), 1));
    }

    #[test]
    fn exponent_is_maximal_exhaustively() {
        // Oracle: largest k such that some m^k == n, by direct search.
        for n in 2u64..=4096 {
            let mut want = 1u32;
            for k in 2u32..=12 {
                let mut m = 2u64;
                while let Some(p) = m.checked_pow(k) {
                    if p == n {
                        want = want.max(k);
                    }
                    if p >= n {
                        break;
                    }
                    m += 1;
                }
            }
            let d = max_perfect_power(&big(n), false);
            assert_eq!(d.exponent, want, "n = {n}");
            assert_eq!(d.root.pow(d.exponent), big(n));
        }
    }

    #[test]
    fn root_is_never_a_perfect_power() {
        for n in [64u64, 729, 65536, 46656, 1_000_000, 16_777_216] {
            let d = max_perfect_power(&big(n), false);
            let again = max_perfect_power(&d.root, false);
            assert_eq!(again.exponent, 1, "root of {n} still decomposes");
        }
    }

    #[test]
    fn fast_path_skips_newton_on_primes() {
        let d = max_perfect_power(&big(1_000_003), true);
        assert_eq!(d.newton_applications, 0);
        assert_eq!(d.exponent, 1);
        let slow = max_perfect_power(&big(1_000_003), false);
        assert_eq!(slow.exponent, 1);
        assert!(slow.newton_applications > 0);
    }

    #[test]
    fn traced_powers_of_six() {
        // 6^6 = (6^2)^... : 2 then 3 succeed once each, various failures between.
        let n = big(6).pow(6);
        let (d, trace) = max_perfect_power_traced(&n, false);
        assert_eq!((d.root, d.exponent), (big(6), 6));
        let successes: Vec<u32> = trace.iter().filter(|a| a.success).map(|a| a.prime).collect();
        assert_eq!(successes, vec![2, 3]);
        assert_eq!(d.newton_applications as usize, trace.len());
    }

    #[test]
    fn rational_decomposition() {
        assert_eq!(
            max_perfect_power_rational(&rational(4, 9), false),
            (rational(2, 3), 2)
        );
        assert_eq!(
            max_perfect_power_rational(&rational(8, 27), false),
            (rational(2, 3), 3)
        );
        assert_eq!(
            max_perfect_power_rational(&rational(28, 15), false),
            (rational(28, 15), 1)
        );
        assert_eq!(
            max_perfect_power_rational(&rational(784, 225), false),
            (rational(28, 15), 2)
        );
        // Mixed exponents: 16/27 = 2^4 / 3^3 decomposes only trivially.
        assert_eq!(
            max_perfect_power_rational(&rational(16, 27), false),
            (rational(16, 27), 1)
        );
        // 64/729 = (2/3)^6.
        assert_eq!(
            max_perfect_power_rational(&rational(64, 729), false),
            (rational(2, 3), 6)
        );
        // Integer and reciprocal inputs.
        assert_eq!(max_perfect_power_rational(&rational(64, 1), false), (rational(2, 1), 6));
        assert_eq!(max_perfect_power_rational(&rational(1, 64), false), (rational(1, 2), 6));
    }

    #[test]
    fn rational_root_uses_divisors_of_first_exponent() {
        // 331776/625: numerator is 24^4, denominator is 5^4.
        let r = rational(331_776, 625);
        assert_eq!(max_perfect_power_rational(&r, false), (rational(24, 5), 4));
        // 625 is decomposed first (smaller); 331776 = 576^2 = 24^4.
    }

    #[test]
    fn exact_rational_roots() {
        assert_eq!(exact_rational_root(&rational(9, 4), 2), Some(rational(3, 2)));
        assert_eq!(exact_rational_root(&rational(9, 4), 3), None);
        assert_eq!(exact_rational_root(&rational(27, 1), 3), Some(rational(3, 1)));
        let p = BigUint::from(12_345_701u64);
        let sq = Rational::from_integer((&p * &p).into());
        assert_eq!(
            exact_rational_root(&sq, 2),
            Some(Rational::from_integer(p.into()))
        );
    }

    #[test]
    fn reciprocal_root_examples() {
        // (9/4)^(1/4) = (3/2)^(1/2)
        assert_eq!(
            max_reciprocal_root(&rational(9, 4), &rational(1, 4)),
            (rational(3, 2), 2)
        );
        // (8/27)^(1/2) cannot lose the square root.
        assert_eq!(
            max_reciprocal_root(&rational(8, 27), &rational(1, 2)),
            (rational(8, 27), 2)
        );
        // 256/81 = (4/3)^4: the whole exponent folds away.
        assert_eq!(
            max_reciprocal_root(&rational(256, 81), &rational(1, 4)),
            (rational(4, 3), 1)
        );
        // Expansion by the exponent numerator: (9/4)^(3/4) = (3/2)^... -> ((3/2)^3)^(1/2).
        assert_eq!(
            max_reciprocal_root(&rational(9, 4), &rational(3, 4)),
            (rational(27, 8), 2)
        );
    }

    #[test]
    fn factor_small_works() {
        assert_eq!(factor_small(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factor_small(509), vec![(509, 1)]);
        assert_eq!(factor_small(1), vec![]);
    }
}
