use std::collections::BTreeMap;

use super::{Backend, Field, Grid, Monomial, Rational};
use crate::{Error, Result};

/// Truncated series in `z` with exponents on the `1/D` grid.
///
/// Exponents and `trunc` are stored in grid units. Every exponent up to and
/// including `trunc` is known exactly; nothing above it is stored.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries<C> {
    grid: Grid,
    trunc: i64,
    coeffs: BTreeMap<i64, C>,
}

impl<C: Field> PuiseuxSeries<C> {
    pub fn zero(grid: Grid, trunc: i64) -> Self {
        PuiseuxSeries { grid, trunc, coeffs: BTreeMap::new() }
    }

    pub fn one(grid: Grid, trunc: i64) -> Self {
        Self::term(grid, trunc, 0, C::one())
    }

    /// `c * z^(e/D)`, dropped if `e > trunc`.
    pub fn term(grid: Grid, trunc: i64, e: i64, c: C) -> Self {
        let mut s = Self::zero(grid, trunc);
        s.add_term(e, &c);
        s
    }

    pub fn from_coeffs(grid: Grid, trunc: i64, coeffs: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut s = Self::zero(grid, trunc);
        for (e, c) in coeffs {
            s.add_term(e, &c);
        }
        s
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Truncation order in grid units.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn trunc_rational(&self) -> Rational {
        self.grid.from_grid(self.trunc)
    }

    pub fn coeff(&self, e: i64) -> Option<&C> {
        self.coeffs.get(&e)
    }

    /// Coefficient at `e`, zero when absent.
    pub fn coeff_or_zero(&self, e: i64) -> C {
        self.coeffs.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest stored term.
    pub fn leading(&self) -> Option<(i64, &C)> {
        self.coeffs.iter().next().map(|(e, c)| (*e, c))
    }

    /// Lowest exponent, or `trunc` for the zero series.
    pub fn valuation(&self) -> i64 {
        self.leading().map(|(e, _)| e).unwrap_or(self.trunc)
    }

    pub fn add_term(&mut self, e: i64, c: &C) {
        if e > self.trunc || c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(v) => {
                *v = v.plus(c);
                if v.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c.clone());
            }
        }
    }

    pub fn truncate(&self, t: i64) -> Self {
        let trunc = self.trunc.min(t);
        PuiseuxSeries { grid: self.grid, trunc, coeffs: self.coeffs.range(..=trunc).map(|(e, c)| (*e, c.clone())).collect() }
    }

    fn check_grid(&self, o: &Self) {
        assert_eq!(self.grid, o.grid, "series on different grids");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_grid(o);
        let mut r = self.truncate(o.trunc);
        for (e, c) in &o.coeffs {
            r.add_term(*e, c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_grid(o);
        let mut r = self.truncate(o.trunc);
        for (e, c) in &o.coeffs {
            r.add_term(*e, &c.negated());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    /// Product; exact up to `min(trunc_a + val_b, trunc_b + val_a)`.
    pub fn mul(&self, o: &Self) -> Self {
        self.check_grid(o);
        let trunc = (self.trunc + o.valuation()).min(o.trunc + self.valuation());
        let mut acc: BTreeMap<i64, C> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in o.coeffs.range(..=trunc - e1) {
                let p = c1.times(c2);
                match acc.get_mut(&(e1 + e2)) {
                    Some(v) => *v = v.plus(&p),
                    None => {
                        acc.insert(e1 + e2, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        PuiseuxSeries { grid: self.grid, trunc, coeffs: acc }
    }

    /// Quotient `q` with `q * o = self` up to the common exact range.
    pub fn divide(&self, o: &Self) -> Result<Self> {
        self.check_grid(o);
        let (vb, lead) = o.leading().ok_or_else(|| Error::DivisionByZero("series divisor is zero".into()))?;
        let inv = lead.try_inverse()?;
        let trunc = (self.trunc - vb).min(o.trunc + self.valuation() - 2 * vb);
        let mut rem = self.clone();
        let mut q = Self::zero(self.grid, trunc);
        let start = self.valuation() - vb;
        for e in start..=trunc {
            let Some(c) = rem.coeffs.get(&(e + vb)).cloned() else { continue };
            let qc = c.times(&inv);
            for (eb, cb) in o.coeffs.range(..=trunc + vb - e) {
                rem.add_term(e + eb, &qc.times(cb).negated());
            }
            q.add_term(e, &qc);
        }
        Ok(q)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.grid, self.trunc);
        }
        self.map(|x| x.times(c))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let v = f(c);
            if !v.is_zero() {
                coeffs.insert(*e, v);
            }
        }
        PuiseuxSeries { grid: self.grid, trunc: self.trunc, coeffs }
    }

    /// Multiplication by `z^(e/D)`.
    pub fn shift(&self, e: i64) -> Self {
        PuiseuxSeries { grid: self.grid, trunc: self.trunc + e, coeffs: self.coeffs.iter().map(|(k, c)| (k + e, c.clone())).collect() }
    }

    /// Substitutes `z -> c z` for a monomial `c`: the coefficient at
    /// `z^(α/D)` picks up `c^(α/D)`.
    pub fn scale_z_by<B: Backend<Coeff = C>>(&self, c: Monomial, backend: &B) -> Result<Self> {
        if c.is_one() {
            return Ok(self.clone());
        }
        let d = self.grid.denominator();
        let mut out = Self::zero(self.grid, self.trunc);
        for (e, v) in &self.coeffs {
            let m = c.pow_ratio(*e, d, self.grid)?;
            out.add_term(*e, &v.times(&backend.monomial(m)?));
        }
        Ok(out)
    }

    /// Multiplies the coefficient at `z^α` by `var^(power * α)`.
    pub fn scale_z_argument<B: Backend<Coeff = C>>(&self, var: Monomial, power: &Rational, backend: &B) -> Result<Self> {
        let c = var.pow_rational(power, self.grid)?;
        self.scale_z_by(c, backend)
    }

    /// Keeps the terms whose exponent is congruent to `r` modulo `m` grid units.
    pub fn restrict_exponents(&self, m: i64, r: i64) -> Self {
        PuiseuxSeries {
            grid: self.grid,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().filter(|(e, _)| e.rem_euclid(m) == r.rem_euclid(m)).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn map_result<D: Field>(&self, f: impl Fn(&C) -> Result<D>) -> Result<PuiseuxSeries<D>> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let v = f(c)?;
            if !v.is_zero() {
                coeffs.insert(*e, v);
            }
        }
        Ok(PuiseuxSeries { grid: self.grid, trunc: self.trunc, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Rational};

    fn s(trunc: i64, cs: &[(i64, i64)]) -> PuiseuxSeries<Rational> {
        PuiseuxSeries::from_coeffs(Grid::default(), trunc, cs.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn one_plus_z_times_one_minus_z() {
        let p = s(32, &[(0, 1), (16, 1)]).mul(&s(32, &[(0, 1), (16, -1)]));
        assert_eq!(p, s(32, &[(0, 1), (32, -1)]));
    }

    #[test]
    fn truncation_min_rule() {
        let p = s(48, &[(0, 1), (16, 2)]).mul(&s(80, &[(0, 1), (32, 3)]));
        assert_eq!(p.trunc(), 48);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = s(64, &[(0, 2), (16, 3), (40, -1)]);
        let b = s(64, &[(0, 1), (8, 5), (16, 1)]);
        assert_eq!(a.mul(&b).divide(&b).unwrap(), a);
        assert!(a.divide(&a).unwrap().coeff(0).unwrap().is_one());
        assert!(a.divide(&s(64, &[])).is_err());
    }

    #[test]
    fn shifting_moves_trunc() {
        let a = s(32, &[(0, 1)]).shift(8);
        assert_eq!(a.trunc(), 40);
        assert_eq!(a.leading().unwrap().0, 8);
    }
}
