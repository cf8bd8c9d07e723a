//! Inputs shared by the benchmarks.

use num_bigint::BigUint;

/// Products of two primes near `2^(bits/2)`, the slow case for rho.
pub fn semiprimes() -> Vec<(u32, BigUint)> {
    vec![
        (40, BigUint::from(1_048_573u64 * 1_048_583)),
        (60, BigUint::from(1_073_741_789u64 * 1_073_741_827)),
        (
            80,
            BigUint::from(1_099_511_627_689u64) * BigUint::from(1_099_511_627_791u64),
        ),
    ]
}

/// Primes of several sizes for the primality tests.
pub fn primes() -> Vec<(u32, BigUint)> {
    let m61 = (BigUint::from(1u8) << 61u32) - 1u32;
    let m127 = (BigUint::from(1u8) << 127u32) - 1u32;
    let m521 = (BigUint::from(1u8) << 521u32) - 1u32;
    vec![(61, m61), (127, m127), (521, m521)]
}

/// Highly composite inputs where trial division does all the work.
pub fn smooth_inputs() -> Vec<BigUint> {
    vec![
        BigUint::from(2u64.pow(20) * 3u64.pow(10) * 5u64.pow(5)),
        BigUint::from(6_436_341u64 * 6_436_343),
        BigUint::from(2u8).pow(100) * BigUint::from(3u8).pow(60),
    ]
}
