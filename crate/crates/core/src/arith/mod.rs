//! Exact integer arithmetic: gcd, factorization, radicals, ω and
//! smooth-number enumeration.
//!
//! Factorization runs trial division by the primes below [`SIEVE_LIMIT`],
//! then splits any remaining composite cofactor with Pollard–Brent. Inputs
//! that fit in a `u64` stay on a machine-word fast path throughout.

mod prime;
mod rho;
mod smooth;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use prime::{is_prime, is_prime_u64, primes_up_to, small_primes, SIEVE_LIMIT};
pub use smooth::{enumerate_smooth, SmoothNumbers};

/// Default bit-size ceiling for [`factorize`].
pub const DEFAULT_MAX_BITS: u64 = 256;

/// Default Pollard-rho iteration budget for cofactors above 64 bits.
pub const DEFAULT_RHO_BUDGET: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("expected a positive integer")]
    NonPositive,
    #[error("{bits}-bit input is too large to factor (ceiling is {max_bits} bits)")]
    TooLarge { bits: u64, max_bits: u64 },
    #[error("gave up splitting composite cofactor {cofactor}")]
    Stalled { cofactor: BigUint },
    #[error("expected a nonempty list")]
    EmptyList,
    #[error("entry {index} is zero")]
    ZeroEntry { index: usize },
    #[error("smoothness bound must be at least 2 and limit at least 1")]
    BadSmoothParams,
}

/// Prime factorization of a positive integer: primes strictly increasing,
/// exponents at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    fn from_unsorted(n: BigUint, mut primes: Vec<BigUint>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { n, factors }
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn radical(&self) -> BigUint {
        self.primes().product()
    }

    pub fn omega(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorization settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorizer {
    pub max_bits: u64,
    pub rho_budget: u64,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer {
            max_bits: DEFAULT_MAX_BITS,
            rho_budget: DEFAULT_RHO_BUDGET,
        }
    }
}

impl Factorizer {
    pub fn with_max_bits(max_bits: u64) -> Self {
        Factorizer {
            max_bits,
            ..Self::default()
        }
    }

    pub fn factorize(&self, n: &BigUint) -> Result<Factorization, ArithError> {
        if n.is_zero() {
            return Err(ArithError::NonPositive);
        }
        if n.bits() > self.max_bits {
            return Err(ArithError::TooLarge {
                bits: n.bits(),
                max_bits: self.max_bits,
            });
        }
        if let Some(small) = n.to_u64() {
            let primes = factor_u64_flat(small);
            return Ok(Factorization::from_unsorted(
                n.clone(),
                primes.into_iter().map(BigUint::from).collect(),
            ));
        }

        let mut primes = Vec::new();
        let mut rest = n.clone();
        let sieve = small_primes();
        let mut digits = rest.to_u32_digits();
        let mut idx = 0;
        while idx < sieve.len() && rest.to_u64().is_none() {
            let p = sieve[idx];
            if prime::rem_small(&digits, p) == 0 {
                rest /= p;
                digits = rest.to_u32_digits();
                primes.push(BigUint::from(p));
            } else {
                idx += 1;
            }
        }

        if let Some(small) = rest.to_u64() {
            let mut tail = Vec::new();
            factor_u64_from(small, idx, &mut tail);
            primes.extend(tail.into_iter().map(BigUint::from));
        } else {
            // No prime factor below the sieve limit remains.
            let mut budget = self.rho_budget;
            let mut stack = vec![rest];
            while let Some(m) = stack.pop() {
                if m.is_one() {
                    continue;
                }
                if let Some(small) = m.to_u64() {
                    let mut tail = Vec::new();
                    split_u64_recursive(small, &mut tail);
                    primes.extend(tail.into_iter().map(BigUint::from));
                    continue;
                }
                if is_prime(&m) {
                    primes.push(m);
                    continue;
                }
                match rho::split_big(&m, &mut budget) {
                    Some(f) => {
                        let g = &m / &f;
                        stack.push(f);
                        stack.push(g);
                    }
                    None => return Err(ArithError::Stalled { cofactor: m }),
                }
            }
        }
        Ok(Factorization::from_unsorted(n.clone(), primes))
    }
}

/// Prime factors of `n` with multiplicity, unsorted. `n = 1` gives none.
fn factor_u64_flat(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    factor_u64_from(n, 0, &mut out);
    out
}

/// Trial division starting at sieve index `start`, then rho on whatever
/// is left. Assumes no prime below `small_primes()[start]` divides `n`.
fn factor_u64_from(mut n: u64, start: usize, out: &mut Vec<u64>) {
    let sieve = small_primes();
    for &p in &sieve[start..] {
        let p = p as u64;
        if p * p > n {
            break;
        }
        while n % p == 0 {
            n /= p;
            out.push(p);
        }
    }
    if n == 1 {
        return;
    }
    let bound = SIEVE_LIMIT as u64;
    if n < bound * bound {
        out.push(n);
        return;
    }
    split_u64_recursive(n, out);
}

fn split_u64_recursive(n: u64, out: &mut Vec<u64>) {
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            out.push(m);
            continue;
        }
        if m % 2 == 0 {
            out.push(2);
            stack.push(m / 2);
            continue;
        }
        let f = rho::split_u64(m);
        stack.push(f);
        stack.push(m / f);
    }
}

/// Factorization of a 64-bit integer as sorted `(prime, exponent)` pairs.
pub fn factorize_u64(n: u64) -> Result<Vec<(u64, u32)>, ArithError> {
    if n == 0 {
        return Err(ArithError::NonPositive);
    }
    let mut primes = factor_u64_flat(n);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Distinct primes of a 64-bit integer, ascending.
pub fn distinct_primes_u64(n: u64) -> Result<Vec<u64>, ArithError> {
    Ok(factorize_u64(n)?.into_iter().map(|(p, _)| p).collect())
}

pub fn radical_u64(n: u64) -> Result<u64, ArithError> {
    Ok(distinct_primes_u64(n)?.into_iter().product())
}

/// Factorize with the default settings.
pub fn factorize(n: &BigUint) -> Result<Factorization, ArithError> {
    Factorizer::default().factorize(n)
}

/// Largest squarefree divisor of `n`.
pub fn radical(n: &BigUint) -> Result<BigUint, ArithError> {
    Ok(factorize(n)?.radical())
}

/// Number of distinct prime factors.
pub fn omega(n: &BigUint) -> Result<usize, ArithError> {
    Ok(factorize(n)?.omega())
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(u: &BigInt, v: &BigInt) -> BigUint {
    u.gcd(v).magnitude().clone()
}

/// Whether every pair of entries is coprime. Single-entry lists are.
pub fn is_pairwise_coprime<T>(xs: &[T]) -> Result<bool, ArithError>
where
    T: Integer + Signed + Clone,
{
    if xs.is_empty() {
        return Err(ArithError::EmptyList);
    }
    if let Some(index) = xs.iter().position(Zero::is_zero) {
        return Err(ArithError::ZeroEntry { index });
    }
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[i + 1..] {
            if !x.gcd(y).abs().is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
