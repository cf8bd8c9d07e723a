use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, ArithError};
use crate::logfun::log_big;
use crate::reduce4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("a, b and c must be positive")]
    NonPositive,
    #[error("a + b != c")]
    SumMismatch,
    #[error("a and b are not coprime")]
    NotCoprime,
    #[error("quadruple entries must be nonzero")]
    ZeroEntry,
    #[error("quadruple entries do not sum to zero")]
    SumNotZero,
    #[error("quadruple entries are not pairwise coprime")]
    NotPairwiseCoprime,
    #[error("entry {0} is out of range")]
    OutOfRange(i64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Coprime positive integers with `a + b = c`, plus their radicals.
///
/// Scanners emit `a <= b`; the type itself allows either order because
/// the abcd reduction needs `a` to be a specific term.
#[derive(Debug, Clone, PartialEq)]
pub struct AbcTriple {
    a: BigUint,
    b: BigUint,
    c: BigUint,
    rad_abc: BigUint,
    rad_bc: BigUint,
    quality: f64,
}

impl AbcTriple {
    pub fn new(a: BigUint, b: BigUint, c: BigUint) -> Result<Self, InstanceError> {
        if a.is_zero() || b.is_zero() {
            return Err(InstanceError::NonPositive);
        }
        if &a + &b != c {
            return Err(InstanceError::SumMismatch);
        }
        if !a.gcd(&b).is_one() {
            return Err(InstanceError::NotCoprime);
        }
        let rad_a = arith::radical(&a)?;
        let rad_b = arith::radical(&b)?;
        let rad_c = arith::radical(&c)?;
        Ok(Self::from_radicals(a, b, c, &rad_a, &rad_b, &rad_c))
    }

    pub fn from_u64(a: u64, b: u64, c: u64) -> Result<Self, InstanceError> {
        Self::new(a.into(), b.into(), c.into())
    }

    /// Assembles a triple from already-known radicals of `a`, `b`, `c`.
    /// Pairwise coprimality makes `rad(abc)` the product of the three.
    pub(crate) fn from_radicals(
        a: BigUint,
        b: BigUint,
        c: BigUint,
        rad_a: &BigUint,
        rad_b: &BigUint,
        rad_c: &BigUint,
    ) -> Self {
        let rad_bc = rad_b * rad_c;
        let rad_abc = rad_a * &rad_bc;
        let quality = quality_of(&c, &rad_abc);
        let t = AbcTriple {
            a,
            b,
            c,
            rad_abc,
            rad_bc,
            quality,
        };
        debug_assert!(t.check_invariants(), "invalid triple {t}");
        t
    }

    /// Re-derives everything by factoring `a`, `b`, `c` from scratch.
    pub(crate) fn check_invariants(&self) -> bool {
        let rad = |n: &BigUint| arith::radical(n).unwrap_or_default();
        let (ra, rb, rc) = (rad(&self.a), rad(&self.b), rad(&self.c));
        !self.a.is_zero()
            && &self.a + &self.b == self.c
            && self.a.gcd(&self.b).is_one()
            && (&self.rad_abc % &self.rad_bc).is_zero()
            && self.rad_bc == &rb * &rc
            && self.rad_abc == ra * rb * rc
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }
    pub fn b(&self) -> &BigUint {
        &self.b
    }
    pub fn c(&self) -> &BigUint {
        &self.c
    }
    pub fn rad_abc(&self) -> &BigUint {
        &self.rad_abc
    }
    pub fn rad_bc(&self) -> &BigUint {
        &self.rad_bc
    }

    /// `log c / log rad(abc)`; above 1 for an abc hit.
    pub fn quality(&self) -> f64 {
        self.quality
    }
}

fn quality_of(c: &BigUint, rad_abc: &BigUint) -> f64 {
    // c >= 2 so rad(abc) >= 2 and both logs are positive.
    log_big(c).unwrap_or(0.0) / log_big(rad_abc).unwrap_or(f64::NAN)
}

impl fmt::Display for AbcTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Smallest pair sum of a quadruple: indices `i < j` and `|x_i + x_j|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinPair {
    pub i: usize,
    pub j: usize,
    pub sum: u64,
}

/// Four pairwise-coprime nonzero integers summing to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbcdQuadruple {
    xs: [i64; 4],
    height: u64,
    min_pair: MinPair,
    radical: BigUint,
}

impl AbcdQuadruple {
    pub fn new(xs: [i64; 4]) -> Result<Self, InstanceError> {
        if let Some(&x) = xs.iter().find(|&&x| x == i64::MIN) {
            return Err(InstanceError::OutOfRange(x));
        }
        if xs.contains(&0) {
            return Err(InstanceError::ZeroEntry);
        }
        if xs.iter().map(|&x| x as i128).sum::<i128>() != 0 {
            return Err(InstanceError::SumNotZero);
        }
        if !arith::is_pairwise_coprime(&xs)? {
            return Err(InstanceError::NotPairwiseCoprime);
        }
        let mut radical = BigUint::one();
        for x in xs {
            radical *= arith::radical_u64(x.unsigned_abs())?;
        }
        Ok(AbcdQuadruple {
            xs,
            height: xs.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0),
            min_pair: reduce4::min_pair_of(&xs),
            radical,
        })
    }

    pub fn xs(&self) -> [i64; 4] {
        self.xs
    }

    /// `H = max |x_j|`.
    pub fn height(&self) -> u64 {
        self.height
    }

    pub fn min_pair(&self) -> MinPair {
        self.min_pair
    }

    /// `rad(x_1 x_2 x_3 x_4)`.
    pub fn radical(&self) -> &BigUint {
        &self.radical
    }

    /// Representative modulo reordering and global sign: entries sorted by
    /// decreasing absolute value (positive first on ties), leading entry
    /// positive.
    pub fn canonical(&self) -> AbcdQuadruple {
        let xs = canonical_form(self.xs);
        if xs == self.xs {
            return self.clone();
        }
        AbcdQuadruple {
            xs,
            height: self.height,
            min_pair: reduce4::min_pair_of(&xs),
            radical: self.radical.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        canonical_form(self.xs) == self.xs
    }
}

pub(crate) fn canonical_form(xs: [i64; 4]) -> [i64; 4] {
    let sorted = |mut v: [i64; 4]| {
        v.sort_by_key(|&x| (std::cmp::Reverse(x.unsigned_abs()), std::cmp::Reverse(x)));
        v
    };
    let plus = sorted(xs);
    let minus = sorted(xs.map(|x| -x));
    match (plus[0] > 0, minus[0] > 0) {
        (true, true) => plus.max(minus),
        (true, false) => plus,
        _ => minus,
    }
}

impl fmt::Display for AbcdQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.xs;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}
