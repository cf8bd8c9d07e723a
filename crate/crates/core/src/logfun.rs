//! Logarithms of big integers, iterated logs and their starred (clamped)
//! variants, and the growth function `t -> (K log R / t)^t`.
//!
//! `log_k^*(t)` is `log_k(t)` when that is defined and at least one, and
//! `1` otherwise. The plain `log^*` used for heights is the `k = 1` case.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LogError {
    #[error("logarithm of a nonpositive integer")]
    NonPositive,
    #[error("growth function parameters out of domain: K = {k}, log R = {log_r}, t = {t}")]
    GrowthDomain { k: f64, log_r: f64, t: f64 },
}

/// An iterated log before and after clamping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarLogValue {
    /// `None` when some intermediate argument was not positive.
    pub raw: Option<f64>,
    pub starred: f64,
}

impl StarLogValue {
    fn from_raw(raw: Option<f64>) -> Self {
        let starred = match raw {
            Some(v) if v >= 1.0 => v,
            _ => 1.0,
        };
        StarLogValue { raw, starred }
    }
}

/// Natural log of a positive integer of any size, from its bit length and
/// leading 64 bits.
pub fn log_big(n: &BigUint) -> Result<f64, LogError> {
    if n.is_zero() {
        return Err(LogError::NonPositive);
    }
    let bits = n.bits();
    if bits <= 64 {
        return Ok((n.to_u64().unwrap_or(u64::MAX) as f64).ln());
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap_or(u64::MAX);
    Ok((top as f64).ln() + shift as f64 * std::f64::consts::LN_2)
}

/// `log` applied `k` times. `None` once an argument is not positive.
pub fn iter_log(k: u32, t: f64) -> Option<f64> {
    iterate_from(k, t)
}

fn iterate_from(k: u32, mut t: f64) -> Option<f64> {
    for _ in 0..k {
        if t.is_nan() || t <= 0.0 {
            return None;
        }
        t = t.ln();
    }
    Some(t)
}

pub fn star_log(k: u32, t: f64) -> StarLogValue {
    StarLogValue::from_raw(iter_log(k, t))
}

/// `log_k^*(t)`, always at least 1.
pub fn iter_log_star(k: u32, t: f64) -> f64 {
    star_log(k, t).starred
}

/// `log_k^*(n)` for a big integer, taking the first log exactly so no
/// precision is lost converting `n` to a float.
pub fn iter_log_star_big(k: u32, n: &BigUint) -> f64 {
    if k == 0 {
        return n.to_f64().unwrap_or(f64::INFINITY).max(1.0);
    }
    let raw = match log_big(n) {
        Ok(first) => iterate_from(k - 1, first),
        Err(_) => None,
    };
    StarLogValue::from_raw(raw).starred
}

/// `(K log R / t)^t`, computed as `exp(t (log(K log R) - log t))`.
pub fn growth_fn(k: f64, r: f64, t: f64) -> Result<f64, LogError> {
    growth_fn_log(k, r.ln(), t)
}

/// [`growth_fn`] taking `log R` directly, for radicals too large for `f64`.
pub fn growth_fn_log(k: f64, log_r: f64, t: f64) -> Result<f64, LogError> {
    if !(k > 0.0 && log_r > 0.0 && t > 0.0) || !(k * log_r).is_finite() {
        return Err(LogError::GrowthDomain { k, log_r, t });
    }
    Ok((t * ((k * log_r).ln() - t.ln())).exp())
}
