//! Arbitrary-precision integer and rational primitives: gcds, exact roots,
//! perfect-power decomposition, and bounded/full factorization.

mod factor;
mod perfect_power;
mod primality;
mod rational;
mod root;

pub use factor::{
    factor_bounded, factor_full, factor_full_invocations, factor_with_primes, primes_up_to,
    BoundedFactorization,
};
pub use perfect_power::{
    exact_rational_root, factor_small, max_perfect_power, max_perfect_power_rational,
    max_perfect_power_traced, max_reciprocal_root, next_prime, PerfectPower, RootAttempt,
};
pub use primality::is_probable_prime;
pub use rational::{
    big_to_rational, floor_rational, format_rational, gcd_rational, is_integer, rational,
    rational_from_big, unsigned_parts, Rational,
};
pub use root::{exact_nth_root, floor_nth_root};
