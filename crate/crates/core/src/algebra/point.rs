use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::is_unit_magnitude;
use super::poly::rational_pow;
use super::{format_rational, parse_rational, ratio, Rational};
use crate::{Error, Result};

/// Exact values of the root variables `Q1 = q1^(1/D)`, `Q2 = q2^(1/D)`, `U = u^(1/D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterPoint {
    q1_root: Rational,
    q2_root: Rational,
    u_root: Rational,
}

impl ParameterPoint {
    /// Checks that all values are nonzero, none has magnitude one, and
    /// `|Q1| != |Q2|` (so `q1 != q2` and `q1/q2` is not a root of unity).
    pub fn new(q1_root: Rational, q2_root: Rational, u_root: Rational) -> Result<Self> {
        for (name, v) in [("Q1", &q1_root), ("Q2", &q2_root), ("U", &u_root)] {
            if v.is_zero() {
                return Err(Error::InvalidPoint(format!("{name} is zero")));
            }
            if is_unit_magnitude(v) {
                return Err(Error::InvalidPoint(format!("|{name}| = 1")));
            }
        }
        if q1_root.abs() == q2_root.abs() {
            return Err(Error::InvalidPoint("|Q1| = |Q2| makes q1/q2 a root of unity".into()));
        }
        Ok(ParameterPoint { q1_root, q2_root, u_root })
    }

    /// The three configured defaults; `q1 < 1 < q2` at each.
    pub fn defaults() -> Vec<ParameterPoint> {
        [((2, 3), (6, 5), (5, 7)), ((5, 7), (4, 3), (11, 13)), ((7, 11), (13, 5), (3, 2))]
            .iter()
            .map(|&((a, b), (c, d), (e, f))| ParameterPoint::new(ratio(a, b), ratio(c, d), ratio(e, f)).expect("valid default"))
            .collect()
    }

    /// Alternative `U` used to test u-independence.
    pub fn alternate_u() -> Rational {
        ratio(3, 11)
    }

    pub fn q1_root(&self) -> &Rational {
        &self.q1_root
    }

    pub fn q2_root(&self) -> &Rational {
        &self.q2_root
    }

    pub fn u_root(&self) -> &Rational {
        &self.u_root
    }

    pub fn roots(&self) -> [Rational; 3] {
        [self.q1_root.clone(), self.q2_root.clone(), self.u_root.clone()]
    }

    pub fn with_u(&self, u_root: Rational) -> Result<Self> {
        Self::new(self.q1_root.clone(), self.q2_root.clone(), u_root)
    }

    /// `(q1, q2) -> (1/q1, 1/q2)`.
    pub fn inverted_q(&self) -> Self {
        ParameterPoint { q1_root: self.q1_root.recip(), q2_root: self.q2_root.recip(), u_root: self.u_root.clone() }
    }

    /// `q1 <-> q2`.
    pub fn swapped_q(&self) -> Self {
        ParameterPoint { q1_root: self.q2_root.clone(), q2_root: self.q1_root.clone(), u_root: self.u_root.clone() }
    }

    /// Rejects `u = q1^a q2^b` for `|a|, |b| <= 2 * order + 2`.
    pub fn check_poles(&self, order: i64) -> Result<()> {
        let r = 2 * order.max(0) + 2;
        let u = self.u_root.abs();
        for a in -r..=r {
            let qa = rational_pow(&self.q1_root.abs(), a)?;
            for b in -r..=r {
                if qa.clone() * rational_pow(&self.q2_root.abs(), b)? == u {
                    return Err(Error::InvalidPoint(format!("u = q1^{a} q2^{b} lies on the pole set")));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("Q1={},Q2={},U={}", format_rational(&self.q1_root), format_rational(&self.q2_root), format_rational(&self.u_root))
    }

    /// Parses `"Q1,Q2,U"` with rational entries.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three comma-separated rationals, got {s:?}")));
        }
        Self::new(parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?)
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for ParameterPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{},{},{}", format_rational(&self.q1_root), format_rational(&self.q2_root), format_rational(&self.u_root)))
    }
}

impl<'de> Deserialize<'de> for ParameterPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ParameterPoint::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn rejects_degenerate_values() {
        assert!(ParameterPoint::new(int(0), int(2), int(3)).is_err());
        assert!(ParameterPoint::new(int(-1), int(2), int(3)).is_err());
        assert!(ParameterPoint::new(ratio(2, 3), ratio(-2, 3), int(3)).is_err());
        assert!(ParameterPoint::new(ratio(2, 3), ratio(6, 5), int(1)).is_err());
    }

    #[test]
    fn pole_set() {
        let p = ParameterPoint::new(int(2), int(3), int(12)).unwrap();
        assert!(p.check_poles(1).is_err());
        for d in ParameterPoint::defaults() {
            d.check_poles(4).unwrap();
        }
    }

    #[test]
    fn parse_round_trip() {
        let p = ParameterPoint::parse("2/3, 6/5, 5/7").unwrap();
        assert_eq!(p, ParameterPoint::defaults()[0]);
        assert_eq!(p.label(), "Q1=2/3,Q2=6/5,U=5/7");
    }
}
