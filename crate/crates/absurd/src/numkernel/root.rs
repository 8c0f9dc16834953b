//! Integer k-th roots by Newton iteration.
//!
//! The iteration is x <- floor(((k-1)x + floor(n/x^(k-1))) / k) starting from
//! 2^ceil(bits(n)/k), which is always at least the true root, so the sequence
//! decreases monotonically. We stop as soon as a step fails to decrease and
//! correct downward; the candidate is verified by exact powering.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Largest x with x^k <= n. Requires n >= 1 and k >= 1.
pub fn floor_nth_root(n: &BigUint, k: u32) -> BigUint {
    assert!(!n.is_zero(), "root of zero");
    assert!(k >= 1);
    if k == 1 || n.is_one() {
        return n.clone();
    }
    let bits = n.bits();
    if u64::from(k) >= bits {
        // n < 2^k means the root is 1.
        return BigUint::one();
    }
    let big_k = BigUint::from(k);
    let k_minus_1 = BigUint::from(k - 1);
    // Initial guess with ceil(bits/k) bits of headroom: 2^ceil(bits/k) >= n^(1/k).
    let mut x = BigUint::one() << bits.div_ceil(u64::from(k));
    loop {
        let next = (&k_minus_1 * &x + n / x.pow(k - 1)) / &big_k;
        if next >= x {
            break;
        }
        x = next;
    }
    while x.pow(k) > *n {
        x -= 1u32;
    }
    x
}

/// Exact k-th root: Some(x) iff x^k == n.
pub fn exact_nth_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let x = floor_nth_root(n, k);
    (x.pow(k) == *n).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent floor-root oracle: binary search on x^k <= n.
    fn floor_root_oracle(n: u128, k: u32) -> u128 {
        let mut lo = 1u128;
        let mut hi = 2u128;
        while pow_checked(hi, k).is_some_and(|p| p <= n) {
            hi *= 2;
        }
        // invariant: lo^k <= n < hi^k
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            match pow_checked(mid, k) {
                Some(p) if p <= n => lo = mid,
                _ => hi = mid,
            }
        }
        lo
    }

    fn pow_checked(x: u128, k: u32) -> Option<u128> {
        let mut acc = 1u128;
        for _ in 0..k {
            acc = acc.checked_mul(x)?;
        }
        Some(acc)
    }

    #[test]
    fn exhaustive_small_range_matches_oracle() {
        for n in 2u64..=20_000 {
            let big = BigUint::from(n);
            for k in 2u32..=20 {
                let got = floor_nth_root(&big, k);
                let want = floor_root_oracle(u128::from(n), k);
                assert_eq!(got, BigUint::from(want), "floor root of {n}^(1/{k})");
            }
        }
    }

    #[test]
    fn all_perfect_powers_up_to_a_million_are_recognized() {
        for k in 2u32..=20 {
            let mut m = 2u64;
            loop {
                let Some(n) = m.checked_pow(k).filter(|&n| n <= 1_000_000) else {
                    break;
                };
                let big = BigUint::from(n);
                assert_eq!(exact_nth_root(&big, k), Some(BigUint::from(m)));
                // Distinct k-th powers are never adjacent for k >= 2, n >= 4.
                assert!(exact_nth_root(&BigUint::from(n - 1), k).is_none());
                assert!(exact_nth_root(&BigUint::from(n + 1), k).is_none());
                m += 1;
            }
        }
    }

    #[test]
    fn huge_exact_roots_round_trip() {
        let base = BigUint::parse_bytes(b"1234567891011121314151617181920", 10).unwrap();
        for k in [2u32, 3, 7, 64] {
            let n = base.pow(k);
            assert_eq!(exact_nth_root(&n, k), Some(base.clone()));
            assert!(exact_nth_root(&(&n + 1u32), k).is_none());
            assert!(exact_nth_root(&(&n - 1u32), k).is_none());
        }
    }

    #[test]
    fn root_of_one_and_small_n() {
        assert_eq!(floor_nth_root(&BigUint::one(), 5), BigUint::one());
        assert_eq!(floor_nth_root(&BigUint::from(2u32), 30), BigUint::one());
    }

    proptest! {
        #[test]
        fn floor_root_brackets_input(n in 2u128..=u128::MAX, k in 2u32..=20) {
            let big = BigUint::from(n);
            let x = floor_nth_root(&big, k);
            prop_assert!(x.pow(k) <= big);
            prop_assert!((&x + 1u32).pow(k) > big);
        }
    }
}
