//! Enumeration of abc triples and abcd quadruples, κ fitting, and
//! resumable scans.
//!
//! All scanners are organised around an outer loop (`c` for triples, `H`
//! for quadruples). The items for one outer value form a block that can be
//! generated independently of every other block, which is what the
//! parallel driver and the checkpoint cursor rely on.

mod checkpoint;
mod driver;
mod fit;
mod instance;
pub mod record;

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::arith::{self, ArithError};
use crate::bounds::{self, BoundError};

pub use checkpoint::{ExtremalRecord, ScanCheckpoint, ScanMode};
pub use driver::{
    run_scan, scan_to_writer, ScanJob, ScanOutcome, ScanSummary, STAT_KAPPA_ABCD, STAT_KAPPA_THM1,
    STAT_KAPPA_THM1PRELIM, STAT_MAX_QUALITY,
};
pub use fit::{kappa_fit, FitBound, FitInstance, KappaFit};
pub use instance::{AbcTriple, AbcdQuadruple, InstanceError, MinPair};

pub(crate) use instance::canonical_form;

/// Largest `c_max` for which the exhaustive scanner builds a radical table.
pub const MAX_TABLE_LIMIT: u64 = 50_000_000;

/// Default ceiling on `h_max` for quadruple scans.
pub const DEFAULT_MAX_HEIGHT: u64 = 1_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("c_max = {0} is too large for an exhaustive scan (limit {MAX_TABLE_LIMIT})")]
    RangeTooLarge(u64),
    #[error("invalid scan parameter: {0}")]
    BadParameter(String),
    #[error("no admissible instances to fit")]
    EmptyInstances,
    #[error("instance kind does not match bound {0:?}")]
    WrongInstanceKind(FitBound),
    #[error("checkpoint does not match this scan: {0}")]
    CheckpointMismatch(String),
    #[error("checkpoint file is malformed: {0}")]
    CheckpointFormat(String),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// `rad(n)` for every `n <= limit`, by sieving.
#[derive(Debug, Clone)]
pub struct RadicalTable {
    rad: Vec<u32>,
}

impl RadicalTable {
    pub fn new(limit: u64) -> Result<Self, SearchError> {
        if limit > MAX_TABLE_LIMIT {
            return Err(SearchError::RangeTooLarge(limit));
        }
        let n = limit as usize;
        let mut rad = vec![1u32; n + 1];
        for p in 2..=n {
            // rad[p] stays 1 only while p has no smaller prime factor.
            if rad[p] == 1 {
                for m in (p..=n).step_by(p) {
                    rad[m] *= p as u32;
                }
            }
        }
        Ok(RadicalTable { rad })
    }

    pub fn limit(&self) -> u64 {
        self.rad.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> u64 {
        self.rad[n as usize] as u64
    }
}

/// Every coprime triple with the given `c`, `a <= b`, `a` ascending, with
/// the size-condition flag at `tau`.
pub fn exhaustive_block(table: &RadicalTable, c: u64, tau: f64) -> Vec<(AbcTriple, bool)> {
    let big_c = BigUint::from(c);
    let rad_c = BigUint::from(table.get(c));
    (1..=c / 2)
        .filter(|&a| a.gcd(&c) == 1)
        .map(|a| {
            let b = c - a;
            let big_a = BigUint::from(a);
            let passes = bounds::gap_condition(&big_a, &big_c, tau);
            let t = AbcTriple::from_radicals(
                big_a,
                BigUint::from(b),
                big_c.clone(),
                &BigUint::from(table.get(a)),
                &BigUint::from(table.get(b)),
                &rad_c,
            );
            (t, passes)
        })
        .collect()
}

/// Iterator over [`scan_exhaustive`].
pub struct ExhaustiveScan {
    table: Arc<RadicalTable>,
    tau: f64,
    next_c: u64,
    c_max: u64,
    block: std::vec::IntoIter<(AbcTriple, bool)>,
}

impl Iterator for ExhaustiveScan {
    type Item = (AbcTriple, bool);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(item) = self.block.next() {
                return Some(item);
            }
            if self.next_c > self.c_max {
                return None;
            }
            self.block = exhaustive_block(&self.table, self.next_c, self.tau).into_iter();
            self.next_c += 1;
        }
    }
}

/// All coprime triples with `c <= c_max` and `a <= b`, ordered by `c` then
/// `a`, each flagged by [`bounds::condition_holds`] at `tau`.
pub fn scan_exhaustive(c_max: u64, tau: f64) -> Result<ExhaustiveScan, SearchError> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(SearchError::BadParameter(format!("tau = {tau}")));
    }
    let table = Arc::new(RadicalTable::new(c_max.max(2))?);
    Ok(ExhaustiveScan {
        table,
        tau,
        next_c: 2,
        c_max,
        block: Vec::new().into_iter(),
    })
}

/// B-smooth values up to `c_max`, shared by every smooth block.
#[derive(Debug, Clone)]
pub struct SmoothSet {
    values: Vec<u64>,
}

impl SmoothSet {
    pub fn new(bound: u64, c_max: u64) -> Result<Self, SearchError> {
        Ok(SmoothSet {
            values: arith::enumerate_smooth(bound, c_max.max(1))?.collect(),
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn contains(&self, n: u64) -> bool {
        self.values.binary_search(&n).is_ok()
    }
}

/// Triples with the given smooth `c` and some smooth `a < c` coprime to
/// it, normalized to `a <= b` and deduplicated, `a` ascending.
pub fn smooth_block(smooth: &SmoothSet, c: u64) -> Result<Vec<AbcTriple>, SearchError> {
    let below = smooth.values.partition_point(|&v| v < c);
    let mut pairs: Vec<(u64, u64)> = smooth.values[..below]
        .iter()
        .filter(|&&a| a.gcd(&c) == 1)
        .map(|&a| (a.min(c - a), a.max(c - a)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let rad_c = BigUint::from(arith::radical_u64(c)?);
    pairs
        .into_iter()
        .map(|(a, b)| {
            Ok(AbcTriple::from_radicals(
                a.into(),
                b.into(),
                c.into(),
                &arith::radical_u64(a)?.into(),
                &arith::radical_u64(b)?.into(),
                &rad_c,
            ))
        })
        .collect()
}

/// Triples with `c <= c_max` B-smooth and at least one of `a`, `b`
/// B-smooth, in the same order as [`scan_exhaustive`].
pub fn scan_smooth(bound: u64, c_max: u64) -> Result<impl Iterator<Item = AbcTriple>, SearchError> {
    let smooth = SmoothSet::new(bound, c_max)?;
    let cs: Vec<u64> = smooth.values.iter().copied().filter(|&c| c >= 2).collect();
    let mut blocks = Vec::new();
    for c in cs {
        blocks.push(smooth_block(&smooth, c)?);
    }
    Ok(blocks.into_iter().flatten())
}

/// Canonical quadruples with leading entry `h`, ordered by `x_2` then
/// `x_3`, each flagged by the abcd hypothesis at `tau`.
pub fn quadruple_block(h: u64, tau: f64) -> Vec<(AbcdQuadruple, bool)> {
    let h = h as i64;
    let mut out = Vec::new();
    if h < 1 {
        return out;
    }
    let sort_key = |x: i64| (x.unsigned_abs(), x);
    for x2 in -h..=h {
        if x2 == 0 || sort_key(x2) > sort_key(h) {
            continue;
        }
        let s2 = x2.abs();
        // |x_4| = |h + x2 + x3| <= |x3| <= |x2| pins x3 to this window.
        let lo = (-s2).max(-h - x2 - s2);
        let hi = s2.min(-h - x2 + s2);
        for x3 in lo..=hi {
            let x4 = -(h + x2 + x3);
            if x3 == 0 || x4 == 0 {
                continue;
            }
            if sort_key(x3) > sort_key(x2) || sort_key(x4) > sort_key(x3) {
                continue;
            }
            let xs = [h, x2, x3, x4];
            if canonical_form(xs) != xs {
                continue;
            }
            if let Ok(q) = AbcdQuadruple::new(xs) {
                let passes = bounds::abcd_hypothesis(&q, tau);
                out.push((q, passes));
            }
        }
    }
    out
}

/// Canonical pairwise-coprime quadruples summing to zero with
/// `max |x_j| <= h_max`, ordered by height.
pub fn scan_quadruples(
    h_max: u64,
    tau: f64,
) -> Result<impl Iterator<Item = (AbcdQuadruple, bool)>, SearchError> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(SearchError::BadParameter(format!("tau = {tau}")));
    }
    if h_max > i64::MAX as u64 / 4 {
        return Err(SearchError::BadParameter(format!("h_max = {h_max}")));
    }
    Ok((1..=h_max).flat_map(move |h| quadruple_block(h, tau)))
}

#[cfg(test)]
mod tests;
