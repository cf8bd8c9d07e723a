//! Reduction of an abcd quadruple to an abc triple.
//!
//! Relabel so the smallest pair sum is `y = x_1 + x_2`. Because the four
//! terms sum to zero, `x_3 + x_4 = -y` as well. Whichever pair contains the
//! largest term `H` gives an equation `y = x_p + x_q` (up to sign) with
//! `|x_p| = H`, and rearranging its three terms to be positive yields
//! `a = |y|`, `b = |x_q|`, `c = H`.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, BoundError, BoundKind, BoundReport};
use crate::search::{AbcTriple, AbcdQuadruple, MinPair};

/// Index pairs in lexicographic order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    /// `H` sits in the minimal pair.
    HIsX1,
    /// `H` sits in the complementary pair.
    HIsX3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionResult {
    pub triple: AbcTriple,
    pub case_tag: CaseTag,
    /// The auxiliary sum over the pair on the `H` side.
    pub y: i64,
    /// The minimal pair, in the quadruple's own indexing.
    pub source_pair: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReduceError {
    #[error("minimal pair sum is zero; the reduced equation degenerates")]
    ZeroPairSum,
    #[error(transparent)]
    Bound(#[from] BoundError),
}

fn complement(i: usize, j: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&k| k != i && k != j);
    (rest.next().unwrap(), rest.next().unwrap())
}

/// Indices `i < j` minimizing `|x_i + x_j|`, ties broken lexicographically.
pub fn min_pair_of(xs: &[i64; 4]) -> MinPair {
    let pair_sum = |(i, j): (usize, usize)| (xs[i] as i128 + xs[j] as i128).unsigned_abs() as u64;
    let (i, j) = PAIRS
        .into_iter()
        .min_by_key(|&p| pair_sum(p))
        .expect("six pairs");
    MinPair {
        i,
        j,
        sum: pair_sum((i, j)),
    }
}

pub fn min_pair(q: &AbcdQuadruple) -> MinPair {
    q.min_pair()
}

/// Produce the triple `(|y|, |x_q|, H)` described in the module docs.
pub fn reduce_to_abc(q: &AbcdQuadruple) -> Result<ReductionResult, ReduceError> {
    let xs = q.xs();
    let h = q.height();
    let MinPair { i, j, sum } = q.min_pair();
    if sum == 0 {
        return Err(ReduceError::ZeroPairSum);
    }

    let is_h = |k: usize| xs[k].unsigned_abs() == h;
    let (case_tag, (p, other)) = if is_h(i) || is_h(j) {
        (CaseTag::HIsX1, if is_h(i) { (i, j) } else { (j, i) })
    } else {
        let (u, v) = complement(i, j);
        (CaseTag::HIsX3, if is_h(u) { (u, v) } else { (v, u) })
    };

    // y = x_p + x_other with |x_p| = H. The pair has opposite signs, so
    // |y| + |x_other| = |x_p|; the assertion below guards that.
    let y = xs[p] + xs[other];
    let a = y.unsigned_abs();
    let b = xs[other].unsigned_abs();
    let c = xs[p].unsigned_abs();
    assert_eq!(
        a as u128 + b as u128,
        c as u128,
        "sign analysis failed for quadruple {q}"
    );
    debug_assert_eq!(a, sum);

    let triple = AbcTriple::from_u64(a, b, c).map_err(BoundError::from)?;
    Ok(ReductionResult {
        triple,
        case_tag,
        y,
        source_pair: (i, j),
    })
}

/// The abcd bound checked through the reduced triple: the main abc bound
/// applied to `(|y|, |x_q|, H)`, whose radical `rad(bc)` divides the full
/// radical. The report also carries the right-hand side computed from the
/// full radical under `rhs_full_radical`.
pub fn verify_abcd_via_reduction(
    q: &AbcdQuadruple,
    tau: f64,
    kappa: f64,
) -> Result<BoundReport, ReduceError> {
    let full = bounds::abcd_verify(q, tau, kappa)?;
    let reduction = reduce_to_abc(q)?;
    let pair = bounds::thm1_verify(&reduction.triple, tau, kappa)?;
    assert!(
        pair.rhs <= full.rhs,
        "pair radical bound {} exceeds full radical bound {} for {q}",
        pair.rhs,
        full.rhs
    );
    let mut report = BoundReport::new(
        BoundKind::AbcdReduction,
        pair.lhs,
        pair.rhs,
        [
            ("kappa", kappa),
            ("tau", tau),
            ("rhs_full_radical", full.rhs),
        ],
    );
    report.params.insert(
        "case".to_string(),
        match reduction.case_tag {
            CaseTag::HIsX1 => 1.0,
            CaseTag::HIsX3 => 3.0,
        },
    );
    Ok(report)
}

/// `rad(b·c)` of the reduced triple divides the quadruple's radical.
pub fn radical_divides(r: &ReductionResult, q: &AbcdQuadruple) -> bool {
    (q.radical() % r.triple.rad_bc()).is_zero()
}
