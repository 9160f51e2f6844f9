use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::field::CanonicalTerms;
use super::poly::rational_pow;
use super::{format_rational, DiskCache, Field, Grid, Monomial, ParameterPoint, Rational, RationalFunction, SeriesCache};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Point,
    Symbolic,
}

impl std::fmt::Display for BackendKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BackendKind::Point => "point",
            BackendKind::Symbolic => "symbolic",
        })
    }
}

impl std::str::FromStr for BackendKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "point" => Ok(BackendKind::Point),
            "symbolic" => Ok(BackendKind::Symbolic),
            _ => Err(Error::Parse(format!("unknown backend {s:?}"))),
        }
    }
}

/// A coefficient field together with a way to realize monomials in it.
pub trait Backend: Send + Sync {
    type Coeff: Field + CanonicalTerms;

    fn grid(&self) -> Grid;

    fn kind(&self) -> BackendKind;

    /// Identity used in cache keys.
    fn label(&self) -> String;

    fn monomial(&self, m: Monomial) -> Result<Self::Coeff>;

    /// `c * m * ∏ (1 - m_i)^(e_i)`; a vanishing factor with negative
    /// exponent is an error naming the factor.
    fn factored(&self, c: &Rational, m: Monomial, factors: &[(Monomial, i64)]) -> Result<Self::Coeff>;

    fn cache(&self) -> &SeriesCache<Self::Coeff>;

    fn constant(&self, r: Rational) -> Self::Coeff {
        Self::Coeff::from_rational(r)
    }

    /// The same backend at a different value of `u`, when the backend has
    /// one. Used to test that a series does not depend on `u`.
    fn u_probe(&self) -> Result<Option<Self>>
    where
        Self: Sized,
    {
        Ok(None)
    }
}

/// Exact rational coefficients at a fixed parameter point.
pub struct PointBackend {
    base: [Rational; 3],
    // exponents must be divisible by this before substituting `base`
    divisor: i64,
    grid: Grid,
    point: Option<ParameterPoint>,
    label: String,
    powers: [RwLock<HashMap<i64, Rational>>; 3],
    cache: SeriesCache<Rational>,
}

impl PointBackend {
    pub fn new(point: ParameterPoint, grid: Grid) -> Self {
        let label = format!("point[{}]@D{}", point.label(), grid.denominator());
        PointBackend { base: point.roots(), divisor: 1, grid, point: Some(point), label, powers: Default::default(), cache: SeriesCache::new() }
    }

    /// Direct values of `q1`, `q2`, `u` rather than of their roots. Only
    /// monomials with exponents divisible by `D` can be evaluated.
    pub fn from_values(q1: Rational, q2: Rational, u: Rational, grid: Grid) -> Result<Self> {
        for v in [&q1, &q2, &u] {
            if Zero::is_zero(v) {
                return Err(Error::InvalidPoint("zero value".into()));
            }
        }
        let label = format!("values[q1={},q2={},u={}]@D{}", format_rational(&q1), format_rational(&q2), format_rational(&u), grid.denominator());
        Ok(PointBackend {
            base: [q1, q2, u],
            divisor: grid.denominator(),
            grid,
            point: None,
            label,
            powers: Default::default(),
            cache: SeriesCache::new(),
        })
    }

    pub fn with_disk_cache(mut self, disk: DiskCache) -> Self {
        self.cache = SeriesCache::with_disk(disk);
        self
    }

    pub fn point(&self) -> Option<&ParameterPoint> {
        self.point.as_ref()
    }

    fn power(&self, var: usize, e: i64) -> Result<Rational> {
        if e == 0 {
            return Ok(<Rational as One>::one());
        }
        if e % self.divisor != 0 {
            return Err(Error::OffGrid { value: format!("{e}/{}", self.grid.denominator()), grid: self.divisor });
        }
        let k = e / self.divisor;
        if let Some(v) = self.powers[var].read().unwrap().get(&k) {
            return Ok(v.clone());
        }
        let v = rational_pow(&self.base[var], k)?;
        self.powers[var].write().unwrap().insert(k, v.clone());
        Ok(v)
    }

    /// Value of a monomial at the point.
    pub fn value(&self, m: Monomial) -> Result<Rational> {
        let mut acc = self.power(0, m.0[0])?;
        acc *= self.power(1, m.0[1])?;
        acc *= self.power(2, m.0[2])?;
        Ok(acc)
    }

    /// Evaluates a rational function at this point.
    pub fn evaluate(&self, r: &RationalFunction) -> Result<Rational> {
        r.eval_with(&|i, k| self.power(i, k))
    }
}

impl Backend for PointBackend {
    type Coeff = Rational;

    fn grid(&self) -> Grid {
        self.grid
    }

    fn kind(&self) -> BackendKind {
        BackendKind::Point
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn monomial(&self, m: Monomial) -> Result<Rational> {
        self.value(m)
    }

    fn factored(&self, c: &Rational, m: Monomial, factors: &[(Monomial, i64)]) -> Result<Rational> {
        let mut num = c * self.value(m)?;
        let mut den = <Rational as One>::one();
        for &(b, e) in factors {
            let f = <Rational as One>::one() - self.value(b)?;
            if Zero::is_zero(&f) {
                if e < 0 {
                    return Err(Error::DivisionByZero(format!("factor (1 - Q1^{} Q2^{} U^{}) vanishes at {}", b.0[0], b.0[1], b.0[2], self.label)));
                }
                return Ok(<Rational as Zero>::zero());
            }
            if e >= 0 {
                num *= rational_pow(&f, e)?;
            } else {
                den *= rational_pow(&f, -e)?;
            }
        }
        Ok(num / den)
    }

    fn cache(&self) -> &SeriesCache<Rational> {
        &self.cache
    }

    fn u_probe(&self) -> Result<Option<Self>> {
        let Some(point) = &self.point else { return Ok(None) };
        let mut alt = ParameterPoint::alternate_u();
        if &alt == point.u_root() {
            alt = super::ratio(2, 9);
        }
        let mut probe = PointBackend::new(point.with_u(alt)?, self.grid);
        if let Some(disk) = self.cache.disk() {
            probe = probe.with_disk_cache(disk.clone());
        }
        Ok(Some(probe))
    }
}

/// Rational-function coefficients in `(Q1, Q2, U)`.
pub struct SymbolicBackend {
    grid: Grid,
    cache: SeriesCache<RationalFunction>,
}

impl SymbolicBackend {
    pub fn new(grid: Grid) -> Self {
        SymbolicBackend { grid, cache: SeriesCache::new() }
    }
}

impl Backend for SymbolicBackend {
    type Coeff = RationalFunction;

    fn grid(&self) -> Grid {
        self.grid
    }

    fn kind(&self) -> BackendKind {
        BackendKind::Symbolic
    }

    fn label(&self) -> String {
        format!("symbolic@D{}", self.grid.denominator())
    }

    fn monomial(&self, m: Monomial) -> Result<RationalFunction> {
        Ok(RationalFunction::monomial(m, <Rational as One>::one()))
    }

    fn factored(&self, c: &Rational, m: Monomial, factors: &[(Monomial, i64)]) -> Result<RationalFunction> {
        RationalFunction::factored(c, m, factors)
    }

    fn cache(&self) -> &SeriesCache<RationalFunction> {
        &self.cache
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio, LaurentPoly};

    #[test]
    fn evaluates_one_minus_u() {
        let g = Grid::default();
        let b = PointBackend::new(ParameterPoint::defaults()[0].clone(), g);
        let r = RationalFunction::from_poly(LaurentPoly::one_minus(g.u()));
        let u = num_traits::pow(ratio(5, 7), 16);
        assert_eq!(b.evaluate(&r).unwrap(), int(1) - u);
        assert_eq!(b.evaluate(&RationalFunction::from_rational(ratio(3, 4))).unwrap(), ratio(3, 4));
    }

    #[test]
    fn direct_values_need_whole_exponents() {
        let g = Grid::default();
        let b = PointBackend::from_values(int(2), ratio(1, 2), int(3), g).unwrap();
        assert_eq!(b.value(g.q1() * g.q2()).unwrap(), int(1));
        assert!(b.value(Monomial::new(8, 0, 0)).is_err());
    }

    #[test]
    fn vanishing_denominator_is_named() {
        let g = Grid::default();
        let b = PointBackend::from_values(int(2), ratio(1, 2), int(3), g).unwrap();
        let err = b.factored(&int(1), Monomial::ONE, &[(g.q1() * g.q2(), -1)]).unwrap_err();
        assert!(err.to_string().contains("vanishes"));
    }
}
