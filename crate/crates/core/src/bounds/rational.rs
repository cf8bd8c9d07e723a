use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::logfun::log_big;

/// A rational number in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    numerator: BigInt,
    denominator: BigUint,
}

impl Rational {
    /// `None` when `denominator` is zero.
    pub fn new(numerator: BigInt, denominator: BigInt) -> Option<Self> {
        if denominator.is_zero() {
            return None;
        }
        let g = numerator.gcd(&denominator);
        let g = if g.is_zero() { BigInt::one() } else { g };
        let mut num = numerator / &g;
        let mut den = denominator / &g;
        if den.sign() == Sign::Minus {
            num = -num;
            den = -den;
        }
        Some(Rational {
            numerator: num,
            denominator: den.magnitude().clone(),
        })
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational {
            numerator: n.into(),
            denominator: BigUint::one(),
        }
    }

    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        Self::new(num.into(), den.into())
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn is_one(&self) -> bool {
        self.numerator.is_one() && self.denominator.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.denominator.is_one()
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Rational {
        let den = BigInt::from(self.denominator.clone());
        Rational::new(&den - &self.numerator, den).expect("nonzero denominator")
    }

    /// `|self|` as a float logarithm: `log|u| - log v`. `None` for zero.
    pub fn log_abs(&self) -> Option<f64> {
        let num = log_big(self.numerator.magnitude()).ok()?;
        let den = log_big(&self.denominator).ok()?;
        Some(num - den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse =
            |t: &str| BigInt::from_str(t.trim()).map_err(|e| format!("bad integer {t:?}: {e}"));
        match s.split_once('/') {
            Some((n, d)) => {
                Rational::new(parse(n)?, parse(d)?).ok_or_else(|| "zero denominator".to_string())
            }
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}
