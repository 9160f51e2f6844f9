use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::Monomial;
use crate::{Error, Result};

/// Arbitrary-precision rational with a positive, fully reduced denominator.
pub type Rational = num_rational::BigRational;

/// Coefficient field used by series and backends.
///
/// Named methods instead of operator traits keep references cheap for
/// big-integer payloads.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn try_inverse(&self) -> Result<Self>;
    fn from_rational(r: Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn divided_by(&self, other: &Self) -> Result<Self> {
        Ok(self.times(&other.try_inverse()?))
    }

    fn scaled(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r.clone()))
    }

    /// Whether the value is known to be free of `U`. `None` when the
    /// representation cannot tell (plain numbers).
    fn u_free(&self) -> Option<bool> {
        None
    }
}

/// Coefficients expressible as finite sums `c * Q1^a Q2^b U^c`, used by
/// the canonical text format.
pub trait CanonicalTerms: Sized {
    fn canonical_terms(&self) -> Option<Vec<(Monomial, Rational)>>;
    fn from_canonical_terms(terms: Vec<(Monomial, Rational)>) -> Option<Self>;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero("rational zero".into()));
        }
        Ok(self.recip())
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

impl CanonicalTerms for Rational {
    fn canonical_terms(&self) -> Option<Vec<(Monomial, Rational)>> {
        Some(vec![(Monomial::ONE, self.clone())])
    }

    fn from_canonical_terms(terms: Vec<(Monomial, Rational)>) -> Option<Self> {
        let mut acc = <Rational as Zero>::zero();
        for (m, c) in terms {
            if !m.is_one() {
                return None;
            }
            acc += c;
        }
        Some(acc)
    }
}

/// `|r| == 1`.
pub(crate) fn is_unit_magnitude(r: &Rational) -> bool {
    One::is_one(&r.abs())
}
