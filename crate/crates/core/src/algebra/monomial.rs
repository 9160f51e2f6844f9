use std::ops::{Div, Mul};

use super::{Grid, Rational};
use crate::{Error, Result};

/// `Q1^a Q2^b U^c` in the root variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [i64; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub const fn new(q1: i64, q2: i64, u: i64) -> Self {
        Monomial([q1, q2, u])
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn exponents(&self) -> [i64; 3] {
        self.0
    }

    pub fn u_exponent(&self) -> i64 {
        self.0[2]
    }

    pub fn inv(self) -> Self {
        Monomial([-self.0[0], -self.0[1], -self.0[2]])
    }

    pub fn pow(self, k: i64) -> Self {
        Monomial([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }

    /// `self^(num/den)`, failing if any exponent leaves the integers.
    pub fn pow_ratio(self, num: i64, den: i64, grid: Grid) -> Result<Self> {
        let mut out = [0i64; 3];
        for (o, &e) in out.iter_mut().zip(self.0.iter()) {
            let p = e as i128 * num as i128;
            if p % den as i128 != 0 {
                return Err(Error::OffGrid { value: format!("{}/{}", p, den as i128 * grid.denominator() as i128), grid: grid.denominator() });
            }
            *o = (p / den as i128) as i64;
        }
        Ok(Monomial(out))
    }

    pub fn pow_rational(self, r: &Rational, grid: Grid) -> Result<Self> {
        use num_traits::ToPrimitive;
        let num = r.numer().to_i64().ok_or_else(|| Error::InvalidArgument(format!("exponent {r} too large")))?;
        let den = r.denom().to_i64().ok_or_else(|| Error::InvalidArgument(format!("exponent {r} too large")))?;
        self.pow_ratio(num, den, grid)
    }

    /// Whether every exponent is divisible by `k`.
    pub fn divisible_by(&self, k: i64) -> bool {
        self.0.iter().all(|e| e % k == 0)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, o: Monomial) -> Monomial {
        Monomial([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Div for Monomial {
    type Output = Monomial;
    fn div(self, o: Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_on_grid() {
        let g = Grid::default();
        let q1q2 = g.q1() * g.q2();
        assert_eq!(q1q2.pow_ratio(1, 4, g).unwrap(), Monomial::new(4, 4, 0));
        assert!(Monomial::new(1, 0, 0).pow_ratio(1, 2, g).is_err());
        assert_eq!((g.u() / g.u()), Monomial::ONE);
    }
}
