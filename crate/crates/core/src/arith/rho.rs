//! Pollard's rho with Brent's cycle detection.
//!
//! Both routines take the polynomial offset `c` explicitly so a failed
//! attempt can be retried deterministically with `c + 1`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::prime::mul_mod;

const BATCH: u64 = 128;

fn abs_diff_big(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// One Brent attempt on an odd composite `n`. Returns a nontrivial factor
/// or `None` if the sequence cycled without one.
fn brent_u64(n: u64, c: u64) -> Option<u64> {
    let step = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;

    let mut y = 2 % n;
    let mut x = y;
    let mut ys = y;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut r = 1u64;

    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = step(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r <<= 1;
    }

    if g == n {
        // The batched product overshot; walk back one step at a time.
        loop {
            ys = step(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Nontrivial factor of an odd composite `n`.
pub(crate) fn split_u64(n: u64) -> u64 {
    debug_assert!(n % 2 == 1 && n > 3);
    let mut c = 1;
    loop {
        if let Some(f) = brent_u64(n, c) {
            return f;
        }
        c += 1;
    }
}

/// Brent attempt on a big odd composite, charging iterations to `budget`.
fn brent_big(n: &BigUint, c: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let step = |x: &BigUint| (x * x + c) % n;

    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;

    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let todo = BATCH.min(r - k);
            if *budget < todo {
                return None;
            }
            *budget -= todo;
            for _ in 0..todo {
                y = step(&y);
                q = (&q * abs_diff_big(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r <<= 1;
    }

    if g == *n {
        loop {
            ys = step(&ys);
            g = abs_diff_big(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n && !g.is_zero()).then_some(g)
}

/// Nontrivial factor of a big odd composite, or `None` once `budget`
/// iterations have been spent.
pub(crate) fn split_big(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let mut c = 1u32;
    while *budget > 0 {
        if let Some(f) = brent_big(n, &BigUint::from(c), budget) {
            return Some(f);
        }
        c += 1;
    }
    None
}
