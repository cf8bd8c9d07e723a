//! Evaluators for the linear-forms-in-logarithms inequality, the
//! subexponential abc bounds, the abcd bound and the n-term conjectures.
//!
//! Every constant the theorems only assert to exist (K, κ, M, η, κ_ε, M_n)
//! is a parameter here. An evaluator returns a [`BoundReport`] whether or
//! not the bound holds; [`BoundError::Hypothesis`] is reserved for inputs
//! on which the theorem asserts nothing.

mod rational;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, ArithError};
use crate::logfun::{growth_fn_log, iter_log_star, iter_log_star_big, log_big, LogError};
use crate::search::{AbcTriple, AbcdQuadruple, InstanceError};

pub use rational::Rational;

/// Placeholder for the linear-forms constant K. Not a proven value.
pub const DEFAULT_K: f64 = 30.0;
/// Placeholder for κ. Not a proven value.
pub const DEFAULT_KAPPA: f64 = 30.0;
/// Placeholder for the ω-bound constant M. Not a proven value.
pub const DEFAULT_M: f64 = 1.5;

/// Largest n for which the vanishing sub-sum check enumerates subsets.
pub const MAX_SUBSUM_TERMS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lfl,
    Thm1prelim,
    Thm1,
    Thm0,
    Thm0earlier,
    NConjecture,
    Abcd,
    AbcdReduction,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Lfl => "lfl",
            BoundKind::Thm1prelim => "thm1prelim",
            BoundKind::Thm1 => "thm1",
            BoundKind::Thm0 => "thm0",
            BoundKind::Thm0earlier => "thm0earlier",
            BoundKind::NConjecture => "n_conjecture",
            BoundKind::Abcd => "abcd",
            BoundKind::AbcdReduction => "abcd_reduction",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: BoundKind,
    pub lhs: f64,
    pub rhs: f64,
    pub params: BTreeMap<String, f64>,
    pub holds: bool,
}

impl BoundReport {
    pub fn new<'a>(
        name: BoundKind,
        lhs: f64,
        rhs: f64,
        params: impl IntoIterator<Item = (&'a str, f64)>,
    ) -> Self {
        BoundReport {
            name,
            lhs,
            rhs,
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            holds: lhs <= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("hypothesis of {bound} not satisfied: {detail}")]
    Hypothesis { bound: BoundKind, detail: String },
    #[error("parameter {name} = {value} is out of range")]
    BadParameter { name: &'static str, value: f64 },
    #[error("xi must differ from 1")]
    XiIsOne,
    #[error("xi = {0} is not in the group generated by the basis")]
    NotInGroup(Rational),
    #[error("basis must be nonempty")]
    EmptyBasis,
    #[error("prime list must be nonempty")]
    EmptyPrimes,
    #[error("prime {0} appears more than once")]
    DuplicatePrime(BigUint),
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("need at least 3 terms, got {0}")]
    TooFewTerms(usize),
    #[error("sub-sum check supports at most {MAX_SUBSUM_TERMS} terms, got {0}")]
    TooManyTerms(usize),
    #[error("terms do not sum to zero")]
    SumNotZero,
    #[error("a proper sub-sum vanishes (terms {0:?})")]
    VanishingSubsum(Vec<usize>),
    #[error("terms are not pairwise coprime")]
    NotPairwiseCoprime,
    #[error("terms have a common factor")]
    GcdNotOne,
    #[error("terms must be nonzero")]
    ZeroTerm,
    #[error("condition requires 1 <= a < c")]
    ConditionDomain,
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Log(#[from] LogError),
}

impl BoundError {
    pub fn is_hypothesis(&self) -> bool {
        matches!(self, BoundError::Hypothesis { .. })
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64, BoundError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(BoundError::BadParameter { name, value })
    }
}

fn ln(n: &BigUint) -> f64 {
    // Callers only pass positive integers.
    log_big(n).unwrap_or(f64::NEG_INFINITY)
}

/// `h(u/v) = log max(|u|, |v|)`.
pub fn height(q: &Rational) -> f64 {
    let num = q.numerator().magnitude();
    let den = q.denominator();
    ln(if num > den { num } else { den })
}

/// Exponent `(log_3^* R / log_2^* R) · log R` shared by the subexponential
/// bounds.
pub fn subexp_exponent(r: &BigUint) -> f64 {
    iter_log_star_big(3, r) / iter_log_star_big(2, r) * ln(r)
}

/// Distinct primes of `b·c`, ascending.
fn primes_of_bc(t: &AbcTriple) -> Result<Vec<BigUint>, BoundError> {
    let mut primes: BTreeSet<BigUint> = BTreeSet::new();
    for n in [t.b(), t.c()] {
        primes.extend(arith::factorize(n)?.primes().cloned());
    }
    Ok(primes.into_iter().collect())
}

fn check_group_membership(xi: &Rational, basis: &[Rational]) -> Result<(), BoundError> {
    let primes: Option<BTreeSet<BigUint>> = basis
        .iter()
        .map(|q| {
            let n = q.numerator();
            (q.is_integer() && n.is_positive() && arith::is_prime(n.magnitude()))
                .then(|| n.magnitude().clone())
        })
        .collect();
    // Membership is only decided for bases of rational primes.
    let Some(primes) = primes else {
        return Ok(());
    };
    if !xi.numerator().is_positive() {
        return Err(BoundError::NotInGroup(xi.clone()));
    }
    for n in [xi.numerator().magnitude(), xi.denominator()] {
        for p in arith::factorize(n)?.primes() {
            if !primes.contains(p) {
                return Err(BoundError::NotInGroup(xi.clone()));
            }
        }
    }
    Ok(())
}

/// `K^m · log^* h(ξ) · ∏ h(ξ_j)`, the linear-forms upper bound on
/// `-log|1 - ξ|` for ξ in the group generated by the basis.
pub fn matveev_rhs(xi: &Rational, basis: &[Rational], k: f64) -> Result<f64, BoundError> {
    let k = positive("K", k)?;
    if xi.is_one() {
        return Err(BoundError::XiIsOne);
    }
    if basis.is_empty() {
        return Err(BoundError::EmptyBasis);
    }
    check_group_membership(xi, basis)?;
    let m = basis.len() as i32;
    let heights: f64 = basis.iter().map(height).product();
    Ok(k.powi(m) * iter_log_star(1, height(xi)) * heights)
}

/// Linear forms in logarithms applied to `ξ = b/c` with the primes of `bc`
/// as basis: `1 - ξ = a/c`, so the left side is `log(c/a)`.
pub fn lfl_check(t: &AbcTriple, k: f64) -> Result<BoundReport, BoundError> {
    let xi = Rational::new(t.b().clone().into(), t.c().clone().into()).expect("c > 0");
    let lhs = -xi.one_minus().log_abs().expect("a > 0");
    let basis: Vec<Rational> = primes_of_bc(t)?
        .into_iter()
        .map(|p| Rational::from_integer(BigInt::from(p)))
        .collect();
    let rhs = matveev_rhs(&xi, &basis, k)?;
    Ok(BoundReport::new(
        BoundKind::Lfl,
        lhs,
        rhs,
        [("K", k), ("m", basis.len() as f64)],
    ))
}

/// Both sides of `K^m ∏ log p_j <= (K log R / m)^m` with `R = ∏ p_j`.
pub fn amgm_chain(primes: &[BigUint], k: f64) -> Result<(f64, f64), BoundError> {
    let k = positive("K", k)?;
    if primes.is_empty() {
        return Err(BoundError::EmptyPrimes);
    }
    let mut seen = BTreeSet::new();
    for p in primes {
        if !arith::is_prime(p) {
            return Err(BoundError::NotPrime(p.clone()));
        }
        if !seen.insert(p) {
            return Err(BoundError::DuplicatePrime(p.clone()));
        }
    }
    let logs: Vec<f64> = primes.iter().map(ln).collect();
    let m = primes.len();
    let left = k.powi(m as i32) * logs.iter().product::<f64>();
    let right = growth_fn_log(k, logs.iter().sum(), m as f64)?;
    Ok((left, right))
}

/// Smallest M with `ω(R) · log_2^* R <= M · log R` for every squarefree
/// `2 <= R <= r_max`. Zero when `r_max < 2`.
pub fn omega_bound_fit(r_max: u64) -> f64 {
    if r_max < 2 {
        return 0.0;
    }
    let n = r_max as usize;
    // omega[r] counts distinct primes; squarefree[r] clears on p^2 | r.
    let mut omega = vec![0u32; n + 1];
    let mut squarefree = vec![true; n + 1];
    for p in 2..=n {
        if omega[p] != 0 {
            continue;
        }
        for m in (p..=n).step_by(p) {
            omega[m] += 1;
        }
        if let Some(sq) = p.checked_mul(p).filter(|&sq| sq <= n) {
            for m in (sq..=n).step_by(sq) {
                squarefree[m] = false;
            }
        }
    }
    (2..=n)
        .filter(|&r| squarefree[r])
        .map(|r| {
            let rf = r as f64;
            omega[r] as f64 * iter_log_star(2, rf) / rf.ln()
        })
        .fold(0.0, f64::max)
}

fn prelim_lhs(t: &AbcTriple) -> f64 {
    (ln(t.c()) - ln(t.a())) / iter_log_star_big(2, t.c())
}

/// `log(c/a) / log_2^* c <= exp(κ · (log_3^* R / log_2^* R) · log R)` with
/// `R = rad(bc)`.
pub fn thm1prelim_verify(t: &AbcTriple, kappa: f64) -> Result<BoundReport, BoundError> {
    let kappa = positive("kappa", kappa)?;
    let rhs = (kappa * subexp_exponent(t.rad_bc())).exp();
    Ok(BoundReport::new(
        BoundKind::Thm1prelim,
        prelim_lhs(t),
        rhs,
        [("kappa", kappa)],
    ))
}

/// `small · exp((log big)^τ · log_2^* big) <= big`, in log space. Ties
/// count as failure.
pub fn gap_condition(small: &BigUint, big: &BigUint, tau: f64) -> bool {
    if small.is_zero() {
        return true;
    }
    let log_big_ = ln(big);
    let threshold = log_big_.powf(tau) * iter_log_star_big(2, big);
    ln(small) + threshold < log_big_
}

/// The size condition `a <= c / exp((log c)^τ log_2^* c)`.
pub fn condition_holds(a: &BigUint, c: &BigUint, tau: f64) -> Result<bool, BoundError> {
    let tau = positive("tau", tau)?;
    if a.is_zero() || a >= c {
        return Err(BoundError::ConditionDomain);
    }
    Ok(gap_condition(a, c, tau))
}

/// `log c <= exp(κ/τ · (log_3^* R / log_2^* R) · log R)` with `R = rad(bc)`,
/// asserted only when [`condition_holds`].
pub fn thm1_verify(t: &AbcTriple, tau: f64, kappa: f64) -> Result<BoundReport, BoundError> {
    let kappa = positive("kappa", kappa)?;
    let tau = positive("tau", tau)?;
    if !condition_holds(t.a(), t.c(), tau)? {
        return Err(BoundError::Hypothesis {
            bound: BoundKind::Thm1,
            detail: format!("a = {} is too large relative to c = {}", t.a(), t.c()),
        });
    }
    let rhs = (kappa / tau * subexp_exponent(t.rad_bc())).exp();
    Ok(BoundReport::new(
        BoundKind::Thm1,
        ln(t.c()),
        rhs,
        [("kappa", kappa), ("tau", tau)],
    ))
}

fn power_hypothesis(t: &AbcTriple, eta: f64, bound: BoundKind) -> Result<(), BoundError> {
    if ln(t.a()) <= (1.0 - eta) * ln(t.c()) {
        Ok(())
    } else {
        Err(BoundError::Hypothesis {
            bound,
            detail: format!("a = {} exceeds c^(1 - {eta})", t.a()),
        })
    }
}

/// `log c <= η⁻¹ exp(κ sqrt(log R · log_2^* R))` with `R = rad(abc)`,
/// asserted when `a <= c^(1-η)`.
pub fn thm0_bound(t: &AbcTriple, eta: f64, kappa: f64) -> Result<BoundReport, BoundError> {
    let eta = positive("eta", eta)?;
    let kappa = positive("kappa", kappa)?;
    power_hypothesis(t, eta, BoundKind::Thm0)?;
    let r = t.rad_abc();
    let rhs = (kappa * (ln(r) * iter_log_star_big(2, r)).sqrt()).exp() / eta;
    Ok(BoundReport::new(
        BoundKind::Thm0,
        ln(t.c()),
        rhs,
        [("eta", eta), ("kappa", kappa)],
    ))
}

/// `log c <= η⁻¹ κ_ε exp((1+ε)(log_3^* R / log_2^* R) log R)` with
/// `R = rad(abc)`, asserted when `a <= c^(1-η)`.
pub fn thm0earlier_bound(
    t: &AbcTriple,
    eta: f64,
    epsilon: f64,
    kappa_eps: f64,
) -> Result<BoundReport, BoundError> {
    let eta = positive("eta", eta)?;
    let kappa_eps = positive("kappa_eps", kappa_eps)?;
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(BoundError::BadParameter {
            name: "epsilon",
            value: epsilon,
        });
    }
    power_hypothesis(t, eta, BoundKind::Thm0earlier)?;
    let rhs = kappa_eps * ((1.0 + epsilon) * subexp_exponent(t.rad_abc())).exp() / eta;
    Ok(BoundReport::new(
        BoundKind::Thm0earlier,
        ln(t.c()),
        rhs,
        [("epsilon", epsilon), ("eta", eta), ("kappa_eps", kappa_eps)],
    ))
}

/// The n-term inequality `max |x_j| <= rad(x_1 ⋯ x_n)^{M_n}` under either
/// the pairwise-coprime (`strong`) or the gcd-one, no-vanishing-sub-sum
/// hypotheses.
pub fn n_conjecture_check(
    xs: &[BigInt],
    m_n: f64,
    strong: bool,
) -> Result<BoundReport, BoundError> {
    let m_n = positive("M_n", m_n)?;
    let n = xs.len();
    if n < 3 {
        return Err(BoundError::TooFewTerms(n));
    }
    if !strong && n > MAX_SUBSUM_TERMS {
        return Err(BoundError::TooManyTerms(n));
    }
    if xs.iter().sum::<BigInt>() != BigInt::zero() {
        return Err(BoundError::SumNotZero);
    }
    if strong {
        if xs.iter().any(Zero::is_zero) {
            return Err(BoundError::ZeroTerm);
        }
        if !arith::is_pairwise_coprime(xs)? {
            return Err(BoundError::NotPairwiseCoprime);
        }
    } else {
        let g = xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_one() {
            return Err(BoundError::GcdNotOne);
        }
        let full = (1u32 << n) - 1;
        for mask in 1..full {
            let s: BigInt = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &xs[i]).sum();
            if s.is_zero() {
                let terms = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                return Err(BoundError::VanishingSubsum(terms));
            }
        }
    }

    let mut primes = BTreeSet::new();
    for x in xs {
        primes.extend(arith::factorize(x.magnitude())?.primes().cloned());
    }
    let rad: BigUint = primes.into_iter().product();
    let max = xs.iter().map(|x| x.magnitude()).max().expect("n >= 3");
    Ok(BoundReport::new(
        BoundKind::NConjecture,
        ln(max),
        m_n * ln(&rad),
        [
            ("M_n", m_n),
            ("n", n as f64),
            ("strong", if strong { 1.0 } else { 0.0 }),
        ],
    ))
}

/// Whether `min_{i<j} |x_i + x_j| <= H / exp((log H)^τ log_2^* H)`.
pub fn abcd_hypothesis(q: &AbcdQuadruple, tau: f64) -> bool {
    gap_condition(
        &BigUint::from(q.min_pair().sum),
        &BigUint::from(q.height()),
        tau,
    )
}

/// `log H <= exp(κ/τ · (log_3^* R / log_2^* R) · log R)` with
/// `R = rad(x_1 x_2 x_3 x_4)`, asserted under [`abcd_hypothesis`].
pub fn abcd_verify(q: &AbcdQuadruple, tau: f64, kappa: f64) -> Result<BoundReport, BoundError> {
    let kappa = positive("kappa", kappa)?;
    let tau = positive("tau", tau)?;
    if !abcd_hypothesis(q, tau) {
        return Err(BoundError::Hypothesis {
            bound: BoundKind::Abcd,
            detail: format!(
                "min pair sum {} is too large relative to H = {}",
                q.min_pair().sum,
                q.height()
            ),
        });
    }
    let rhs = (kappa / tau * subexp_exponent(q.radical())).exp();
    Ok(BoundReport::new(
        BoundKind::Abcd,
        (q.height() as f64).ln(),
        rhs,
        [("kappa", kappa), ("tau", tau)],
    ))
}

/// Smallest κ with `lhs <= exp(κ · x)`, given `x >= 0`.
fn demand(lhs: f64, x: f64) -> f64 {
    if lhs <= 1.0 {
        0.0
    } else if x > 0.0 {
        lhs.ln() / x
    } else {
        f64::INFINITY
    }
}

/// Smallest κ for which [`thm1prelim_verify`] holds on `t`.
pub fn kappa_demand_thm1prelim(t: &AbcTriple) -> f64 {
    demand(prelim_lhs(t), subexp_exponent(t.rad_bc()))
}

/// Smallest κ for which [`thm1_verify`] holds on `t`, or `None` when the
/// size condition fails.
pub fn kappa_demand_thm1(t: &AbcTriple, tau: f64) -> Result<Option<f64>, BoundError> {
    let tau = positive("tau", tau)?;
    if !condition_holds(t.a(), t.c(), tau)? {
        return Ok(None);
    }
    Ok(Some(tau * demand(ln(t.c()), subexp_exponent(t.rad_bc()))))
}

/// Smallest κ for which [`abcd_verify`] holds on `q`, or `None` when the
/// hypothesis fails.
pub fn kappa_demand_abcd(q: &AbcdQuadruple, tau: f64) -> Result<Option<f64>, BoundError> {
    let tau = positive("tau", tau)?;
    if !abcd_hypothesis(q, tau) {
        return Ok(None);
    }
    let log_h = (q.height() as f64).ln();
    Ok(Some(tau * demand(log_h, subexp_exponent(q.radical()))))
}
