//! Prime sieve and deterministic primality testing.
//!
//! Below 2^64 the Miller-Rabin test with the first twelve prime bases is
//! deterministic. Above that we run Baillie-PSW: one strong base-2 round
//! followed by a strong Lucas test with Selfridge parameters.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Trial-division primes go up to this bound.
pub const SIEVE_LIMIT: u32 = 1_000_000;

const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

static SMALL_PRIMES: OnceLock<Vec<u32>> = OnceLock::new();

/// All primes up to [`SIEVE_LIMIT`], ascending. Built on first use.
pub fn small_primes() -> &'static [u32] {
    SMALL_PRIMES.get_or_init(|| primes_up_to(SIEVE_LIMIT as usize))
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(limit: usize) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut i = 2;
    while i * i <= limit {
        if !composite[i] {
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..=limit)
        .filter(|&k| !composite[k])
        .map(|k| k as u32)
        .collect()
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_U64 {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }

    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;

    'witness: for &a in &MR_BASES_U64 {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality of an arbitrary-size integer.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let digits = n.to_u32_digits();
    for &p in &small_primes()[..64] {
        if rem_small(&digits, p) == 0 {
            return false;
        }
    }
    bpsw(n)
}

/// `n mod p` from little-endian base-2^32 digits.
pub(crate) fn rem_small(digits: &[u32], p: u32) -> u32 {
    let p = p as u64;
    digits
        .iter()
        .rev()
        .fold(0u64, |acc, &d| ((acc << 32) | d as u64) % p) as u32
}

/// Baillie-PSW probable-prime test. Valid for any `n`, but only used above
/// 2^64 where the fixed-base Miller-Rabin set stops being deterministic.
pub(crate) fn bpsw(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    if *n == two {
        return true;
    }
    if n.is_even() {
        return false;
    }
    strong_probable_prime(n, &two) && strong_lucas_probable_prime(n)
}

fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let mut x = base.modpow(&d, n);
    if x.is_one() || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_one {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigUint, n: &BigUint) -> i32 {
    let mut a = a % n;
    let mut n = n.clone();
    let mut t = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        if tz % 2 == 1 {
            let r = (&n % 8u32).to_u32().unwrap_or(0);
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn signed_mod(v: i64, n: &BigUint) -> BigUint {
    let m = BigUint::from(v.unsigned_abs()) % n;
    if v < 0 && !m.is_zero() {
        n - m
    } else {
        m
    }
}

fn half_mod(x: BigUint, n: &BigUint) -> BigUint {
    if x.is_odd() {
        (x + n) >> 1
    } else {
        x >> 1
    }
}

fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    if n.sqrt().pow(2) == *n {
        return false;
    }

    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d: i64 = 5;
    loop {
        let j = jacobi(&signed_mod(d, n), n);
        if j == -1 {
            break;
        }
        if j == 0 && BigUint::from(d.unsigned_abs()) != *n {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let q = (1 - d) / 4;
    let d_mod = signed_mod(d, n);
    let q_mod = signed_mod(q, n);
    let two_n = n << 1;

    let n_plus_one = n + 1u32;
    let s = n_plus_one.trailing_zeros().unwrap_or(0);
    let k = &n_plus_one >> s;

    // P = 1 throughout.
    let mut u = BigUint::one();
    let mut v = BigUint::one();
    let mut qk = q_mod.clone();
    for bit in (0..k.bits() - 1).rev() {
        u = (&u * &v) % n;
        v = (&v * &v + &two_n - ((&qk << 1) % n)) % n;
        qk = (&qk * &qk) % n;
        if k.bit(bit) {
            let next_u = half_mod((&u + &v) % n, n);
            let next_v = half_mod((&d_mod * &u + &v) % n, n);
            u = next_u;
            v = next_v;
            qk = (&qk * &q_mod) % n;
        }
    }

    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v + &two_n - ((&qk << 1) % n)) % n;
        qk = (&qk * &qk) % n;
        if v.is_zero() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn sieve_matches_naive() {
        let ps = primes_up_to(10_000);
        let expected: Vec<u32> = (0..=10_000u32)
            .filter(|&n| naive_is_prime(n as u64))
            .collect();
        assert_eq!(ps, expected);
        assert_eq!(small_primes().len(), 78_498);
    }

    #[test]
    fn miller_rabin_small_range() {
        for n in 0..200_000u64 {
            assert_eq!(is_prime_u64(n), naive_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn miller_rabin_strong_pseudoprimes() {
        // Strong pseudoprimes to several small bases, plus Carmichael numbers.
        for n in [
            2_047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
            3_825_123_056_546_413_051,
            561,
            41_041,
            825_265,
        ] {
            assert!(!is_prime_u64(n), "{n} is composite");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(u64::MAX));
    }

    #[test]
    fn bpsw_agrees_on_small_odd_numbers() {
        for n in 3..100_000u64 {
            assert_eq!(bpsw(&BigUint::from(n)), naive_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn bpsw_rejects_lucas_pseudoprimes() {
        // Strong Lucas pseudoprimes; base-2 rejects them and so must BPSW.
        for n in [5_459u64, 5_777, 10_877, 16_109, 18_971, 22_499] {
            assert!(!bpsw(&BigUint::from(n)));
        }
    }

    #[test]
    fn big_primes_and_composites() {
        let m89 = (BigUint::one() << 89) - 1u32;
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m89 * &m127)));
        // 2^67 - 1 = 193707721 * 761838257287
        assert!(!is_prime(&((BigUint::one() << 67) - 1u32)));
        let p = BigUint::from(18_446_744_073_709_551_557u64);
        assert!(!is_prime(&(&p * &p)));
    }
}
