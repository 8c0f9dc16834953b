//! Miller-Rabin probable-prime testing.

use num_bigint::{BigUint, RandBigInt};

use num_traits::{One, Zero};

/// Witnesses that make Miller-Rabin deterministic below 2^64.
const SMALL_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const RANDOM_ROUNDS: usize = 40;

/// Probable-prime test: deterministic below 2^64, forty random rounds above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 1 is odd here");
    let d = &n_minus_1 >> s;
    if n.bits() <= 64 {
        SMALL_BASES
            .iter()
            .all(|&a| passes_round(n, &n_minus_1, &d, s, &BigUint::from(a)))
    } else {
        let mut rng = rand::thread_rng();
        let two = BigUint::from(2u32);
        (0..RANDOM_ROUNDS).all(|_| {
            let a = rng.gen_biguint_range(&two, &n_minus_1);
            passes_round(n, &n_minus_1, &d, s, &a)
        })
    }
}

fn passes_round(n: &BigUint, n_minus_1: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || x == *n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u32), n);
        if x == *n_minus_1 {
            return true;
        }
    }
    false
}
