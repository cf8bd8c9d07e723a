//! B-smooth numbers in increasing order, generated Hamming-style from a
//! min-heap.
//!
//! Every heap entry remembers the index of the largest prime used to build
//! it and is only extended by primes at or above that index, so each smooth
//! number is produced exactly once.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{primes_up_to, small_primes, ArithError, SIEVE_LIMIT};

#[derive(Debug, Clone)]
pub struct SmoothNumbers {
    primes: Vec<u64>,
    limit: u64,
    heap: BinaryHeap<Reverse<(u64, usize)>>,
}

impl Iterator for SmoothNumbers {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let Reverse((x, from)) = self.heap.pop()?;
        for (j, &p) in self.primes.iter().enumerate().skip(from) {
            match x.checked_mul(p) {
                Some(y) if y <= self.limit => self.heap.push(Reverse((y, j))),
                _ => break,
            }
        }
        Some(x)
    }
}

/// Integers `n <= limit` whose prime factors are all `<= bound`, ascending.
pub fn enumerate_smooth(bound: u64, limit: u64) -> Result<SmoothNumbers, ArithError> {
    if bound < 2 || limit < 1 {
        return Err(ArithError::BadSmoothParams);
    }
    let top = bound.min(limit);
    let primes: Vec<u64> = if top <= SIEVE_LIMIT as u64 {
        let sieve = small_primes();
        let end = sieve.partition_point(|&p| p as u64 <= top);
        sieve[..end].iter().map(|&p| p as u64).collect()
    } else {
        primes_up_to(top as usize)
            .into_iter()
            .map(u64::from)
            .collect()
    };
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((1, 0)));
    Ok(SmoothNumbers {
        primes,
        limit,
        heap,
    })
}
