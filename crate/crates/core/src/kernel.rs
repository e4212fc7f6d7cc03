//! The standard Riesz MV-algebra on the rational points of `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{Rational, RationalParseError};

/// A rational number in the closed unit interval.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitRational(Rational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitError {
    #[error("{0} lies outside [0, 1]")]
    OutOfRange(Rational),
    #[error(transparent)]
    Parse(#[from] RationalParseError),
}

impl UnitRational {
    pub fn new(value: Rational) -> Result<Self, UnitError> {
        if value.is_negative() || value > Rational::one() {
            Err(UnitError::OutOfRange(value))
        } else {
            Ok(UnitRational(value))
        }
    }

    /// `num / den`; panics when the quotient leaves `[0, 1]`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(Rational::new(num, den)).expect("ratio outside [0, 1]")
    }

    pub fn zero() -> Self {
        UnitRational(Rational::zero())
    }

    pub fn one() -> Self {
        UnitRational(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    // Internal constructor for results already known to be in range.
    pub(crate) fn from_checked(value: Rational) -> Self {
        debug_assert!(!value.is_negative() && value <= Rational::one(), "{value} escaped [0, 1]");
        UnitRational(value)
    }
}

impl TryFrom<Rational> for UnitRational {
    type Error = UnitError;
    fn try_from(value: Rational) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl From<UnitRational> for Rational {
    fn from(value: UnitRational) -> Self {
        value.0
    }
}

impl FromStr for UnitRational {
    type Err = UnitError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(s.parse()?)
    }
}

impl fmt::Display for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for UnitRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UnitRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = Rational::deserialize(deserializer)?;
        UnitRational::new(value).map_err(serde::de::Error::custom)
    }
}

/// `x ⊕ y = min(1, x + y)`.
pub fn mv_oplus(x: &UnitRational, y: &UnitRational) -> UnitRational {
    UnitRational::from_checked((&x.0 + &y.0).min(Rational::one()))
}

/// `x* = 1 - x`.
pub fn mv_neg(x: &UnitRational) -> UnitRational {
    UnitRational::from_checked(Rational::one() - &x.0)
}

/// `x ⊙ y = (x* ⊕ y*)*`, i.e. `max(0, x + y - 1)`.
pub fn mv_odot(x: &UnitRational, y: &UnitRational) -> UnitRational {
    mv_neg(&mv_oplus(&mv_neg(x), &mv_neg(y)))
}

/// `x → y = x* ⊕ y`.
pub fn mv_implies(x: &UnitRational, y: &UnitRational) -> UnitRational {
    mv_oplus(&mv_neg(x), y)
}

/// `x ∨ y = x ⊕ (y ⊙ x*)`.
pub fn mv_join(x: &UnitRational, y: &UnitRational) -> UnitRational {
    mv_oplus(x, &mv_odot(y, &mv_neg(x)))
}

/// `x ∧ y = x ⊙ (x* ⊕ y)`.
pub fn mv_meet(x: &UnitRational, y: &UnitRational) -> UnitRational {
    mv_odot(x, &mv_oplus(&mv_neg(x), y))
}

/// `d(x, y) = (x ⊙ y*) ⊕ (x* ⊙ y)`, which is `|x - y|`.
pub fn mv_dist(x: &UnitRational, y: &UnitRational) -> UnitRational {
    mv_oplus(&mv_odot(x, &mv_neg(y)), &mv_odot(&mv_neg(x), y))
}

/// The scalar action `r · x`.
pub fn scalar_mul(r: &UnitRational, x: &UnitRational) -> UnitRational {
    UnitRational::from_checked(&r.0 * &x.0)
}
