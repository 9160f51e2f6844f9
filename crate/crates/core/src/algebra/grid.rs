use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_rational, Monomial, Rational};
use crate::{Error, Result};

/// Exponent grid: every exponent is an integer multiple of `1/D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid {
    d: i64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { d: 16 }
    }
}

impl Grid {
    /// `D` must be positive and even so that `u^(1/2)` is on the grid.
    pub fn new(d: i64) -> Result<Grid> {
        if d <= 0 || d % 2 != 0 {
            return Err(Error::InvalidArgument(format!("grid denominator must be positive and even, got {d}")));
        }
        Ok(Grid { d })
    }

    pub fn denominator(self) -> i64 {
        self.d
    }

    pub fn q1(self) -> Monomial {
        Monomial::new(self.d, 0, 0)
    }

    pub fn q2(self) -> Monomial {
        Monomial::new(0, self.d, 0)
    }

    pub fn u(self) -> Monomial {
        Monomial::new(0, 0, self.d)
    }

    /// `q1^a q2^b u^c` with rational exponents.
    pub fn monomial(self, a: &Rational, b: &Rational, c: &Rational) -> Result<Monomial> {
        Ok(Monomial::new(self.to_grid(a)?, self.to_grid(b)?, self.to_grid(c)?))
    }

    /// Grid units of a rational exponent.
    pub fn to_grid(self, r: &Rational) -> Result<i64> {
        let scaled = r * Rational::from_integer(self.d.into());
        if !scaled.is_integer() {
            return Err(Error::OffGrid { value: r.to_string(), grid: self.d });
        }
        scaled.to_integer().to_i64().ok_or_else(|| Error::OffGrid { value: r.to_string(), grid: self.d })
    }

    pub fn from_grid(self, e: i64) -> Rational {
        Rational::new(e.into(), self.d.into())
    }

    /// `e * num / den` in grid units, failing when the product leaves the grid.
    pub fn scale_exponent(self, e: i64, num: i64, den: i64) -> Result<i64> {
        let p = e as i128 * num as i128;
        if p % den as i128 != 0 {
            return Err(Error::OffGrid { value: format!("{}/{}", p, den as i128 * self.d as i128), grid: self.d });
        }
        Ok((p / den as i128) as i64)
    }
}

/// Truncation order in `z`: exponents `<= order` are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Order(#[serde(with = "rational_string")] Rational);

impl Order {
    pub fn integer(k: i64) -> Order {
        Order(Rational::from_integer(k.into()))
    }

    pub fn new(r: Rational) -> Result<Order> {
        if r.is_negative() {
            return Err(Error::InvalidArgument(format!("negative order {r}")));
        }
        Ok(Order(r))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn to_grid(&self, grid: Grid) -> Result<i64> {
        grid.to_grid(&self.0)
    }

    /// Largest integer not exceeding the order.
    pub fn floor(&self) -> i64 {
        self.0.numer().div_floor(self.0.denom()).to_i64().unwrap_or(i64::MAX)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Order {
    type Err = Error;
    fn from_str(s: &str) -> Result<Order> {
        Order::new(parse_rational(s)?)
    }
}

pub(crate) mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        crate::algebra::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
