//! Bundled demonstration inputs shared by the test suite and the CLI
//! `fixtures` subcommand.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::numkernel::is_probable_prime;

/// Sixteen parseable renderings of the same number, one per display-form
/// kind in [`crate::FormKind::ALL`] order, written as quotients.
pub const SIXTEEN_FORM_INPUTS: [&str; 16] = [
    "2^(4/3)*7^(2/3)/(3^(2/3)*5^(2/3))",
    "2*2^(1/3)*3^(1/3)*5^(1/3)*7^(2/3)/15",
    "14*2^(1/3)*3^(1/3)*5^(1/3)/(15*7^(1/3))",
    "2*2^(1/3)*7^(2/3)/(3^(2/3)*5^(2/3))",
    "2^(4/3)*7^(2/3)/15^(2/3)",
    "2*7^(2/3)*30^(1/3)/15",
    "14*30^(1/3)/(15*7^(1/3))",
    "2*2^(1/3)*7^(2/3)/15^(2/3)",
    "2*2^(1/3)*(7/15)^(2/3)",
    "14*(30/7)^(1/3)/15",
    "(28/15)^(2/3)",
    "28^(2/3)/15^(2/3)",
    "(784/225)^(1/3)",
    "784^(1/3)/225^(1/3)",
    "2*1470^(1/3)/15",
    "11760^(1/3)/15",
];

/// Product-layout renderings of the same sixteen forms; converting any input
/// above to `FormKind::ALL[i]` must reproduce entry `i` byte for byte.
pub const SIXTEEN_FORM_PRODUCTS: [&str; 16] = [
    "2^(4/3)*3^(-2/3)*5^(-2/3)*7^(2/3)",
    "2/15*2^(1/3)*3^(1/3)*5^(1/3)*7^(2/3)",
    "14/15*2^(1/3)*3^(1/3)*5^(1/3)*7^(-1/3)",
    "2*2^(1/3)*3^(-2/3)*5^(-2/3)*7^(2/3)",
    "2^(4/3)*7^(2/3)*15^(-2/3)",
    "2/15*7^(2/3)*30^(1/3)",
    "14/15*7^(-1/3)*30^(1/3)",
    "2*2^(1/3)*7^(2/3)*15^(-2/3)",
    "2*2^(1/3)*(7/15)^(2/3)",
    "14/15*(30/7)^(1/3)",
    "(28/15)^(2/3)",
    "15^(-2/3)*28^(2/3)",
    "(784/225)^(1/3)",
    "225^(-1/3)*784^(1/3)",
    "2/15*1470^(1/3)",
    "1/15*11760^(1/3)",
];

/// A difference of two writings of one surd over seven-to-eight-digit primes.
/// It must cancel to zero by gcd refinement alone, with no factoring at all.
pub const BIG_PRIME_DIFFERENCE: &str =
    "sqrt(12345701^2*12345709)-12345701*sqrt(12345709)";

/// An extreme perfect-power decomposition with a reproducible root-attempt
/// trace (probable-prime shortcut disabled).
pub struct PowerBenchCase {
    pub label: String,
    pub value: BigUint,
    pub expected_exponent: u32,
}

/// The five decomposition stress cases, ordered from fewest to most Newton
/// applications: a wide composite power, the extreme power of two, a prime
/// square, a prime power of two, and a bare prime.
pub fn power_bench_cases() -> Vec<PowerBenchCase> {
    let p256 = largest_prime_below(&(BigUint::one() << 256u32));
    let p512 = largest_prime_below(&(BigUint::one() << 512u32));
    vec![
        PowerBenchCase {
            label: "6^210".into(),
            value: BigUint::from(6u32).pow(210),
            expected_exponent: 210,
        },
        PowerBenchCase {
            label: "2^512".into(),
            value: BigUint::one() << 512u32,
            expected_exponent: 512,
        },
        PowerBenchCase {
            label: "p^2 for the largest prime p < 2^256".into(),
            value: &p256 * &p256,
            expected_exponent: 2,
        },
        PowerBenchCase {
            label: "2^509".into(),
            value: BigUint::one() << 509u32,
            expected_exponent: 509,
        },
        PowerBenchCase {
            label: "largest prime < 2^512".into(),
            value: p512,
            expected_exponent: 1,
        },
    ]
}

/// Largest (probable) prime strictly below `limit`.
pub fn largest_prime_below(limit: &BigUint) -> BigUint {
    assert!(*limit > BigUint::from(3u32));
    let mut c = limit - 1u32;
    if (&c % 2u32).is_zero() {
        c -= 1u32;
    }
    while !is_probable_prime(&c) {
        c -= 2u32;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::Config;
    use crate::expr::evaluate;

    #[test]
    fn all_sixteen_inputs_are_the_same_number() {
        let cfg = Config::new(1000, 1 << 20);
        let reference = evaluate(SIXTEEN_FORM_INPUTS[0], &cfg).unwrap();
        for s in SIXTEEN_FORM_INPUTS.iter().chain(SIXTEEN_FORM_PRODUCTS.iter()) {
            let v = evaluate(s, &cfg).unwrap();
            assert!(reference.sub(&v, &cfg).is_zero(), "{s} differs");
        }
    }

    #[test]
    fn largest_prime_below_small_limits() {
        assert_eq!(largest_prime_below(&BigUint::from(10u32)), BigUint::from(7u32));
        assert_eq!(largest_prime_below(&BigUint::from(8u32)), BigUint::from(7u32));
        assert_eq!(largest_prime_below(&BigUint::from(100u32)), BigUint::from(97u32));
        // 2^64 - 59 is the largest prime below 2^64.
        assert_eq!(
            largest_prime_below(&(BigUint::one() << 64u32)),
            BigUint::from(u64::MAX - 58),
        );
    }
}
