use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::field::CanonicalTerms;
use super::{gcd, Field, LaurentPoly, Monomial, Rational};
use crate::{Error, Result};

/// Quotient of Laurent polynomials in `(Q1, Q2, U)`.
///
/// The denominator is kept as a multiset of factors, each normalized so
/// that its lex-least term is `1 * Q^0`; the product is therefore in the
/// canonical form as well. Sums use the least common multiple of the factor
/// multisets, so no expansion of the denominator is ever needed. Reduction
/// is lazy: [`reduce`](Self::reduce) cancels whole factors by trial
/// division and [`reduce_full`](Self::reduce_full) runs the gcd.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: BTreeMap<LaurentPoly, u32>,
}

impl RationalFunction {
    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalFunction { num, den: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        Self::from_poly(LaurentPoly::monomial(m, c))
    }

    /// `num / den`; fails on a zero denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        let mut r = Self::from_poly(num);
        r.push_factor(den, 1)?;
        Ok(r)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&LaurentPoly, u32)> {
        self.den.iter().map(|(p, &k)| (p, k))
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for (f, &k) in &self.den {
            acc = &acc * &f.pow(k);
        }
        acc
    }

    /// Multiplies by `f^(-k)`, normalizing `f` and moving its content into the numerator.
    fn push_factor(&mut self, f: LaurentPoly, k: u32) -> Result<()> {
        if f.is_zero() {
            return Err(Error::DivisionByZero("zero polynomial denominator".into()));
        }
        if k == 0 {
            return Ok(());
        }
        let (e, c) = f.lex_least().map(|(e, c)| (e, c.clone())).unwrap();
        let inv = c.recip();
        let norm = f.shift(&[-e[0], -e[1], -e[2]]).scale(&inv);
        let content = LaurentPoly::term([-e[0] * k as i64, -e[1] * k as i64, -e[2] * k as i64], num_traits::pow(inv, k as usize));
        self.num = &self.num * &content;
        if norm.is_one() {
            return Ok(());
        }
        *self.den.entry(norm).or_insert(0) += k;
        Ok(())
    }

    /// `c * m * ∏ (1 - m_i)^(e_i)`.
    pub fn factored(c: &Rational, m: Monomial, factors: &[(Monomial, i64)]) -> Result<Self> {
        let mut num = LaurentPoly::monomial(m, c.clone());
        let mut r = RationalFunction { num: LaurentPoly::one(), den: BTreeMap::new() };
        for &(b, e) in factors {
            let f = LaurentPoly::one_minus(b);
            if f.is_zero() {
                if e < 0 {
                    return Err(Error::DivisionByZero(format!("factor (1 - {:?}) vanishes", b.0)));
                }
                return Ok(Self::from_poly(LaurentPoly::zero()));
            }
            if e >= 0 {
                num = &num * &f.pow(e as u32);
            } else {
                r.push_factor(f, (-e) as u32)?;
            }
        }
        r.num = &r.num * &num;
        Ok(r)
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduce(&mut self) {
        let keys: Vec<LaurentPoly> = self.den.keys().cloned().collect();
        for f in keys {
            while let Some(k) = self.den.get(&f).copied() {
                if k == 0 {
                    break;
                }
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        if k == 1 {
                            self.den.remove(&f);
                        } else {
                            self.den.insert(f.clone(), k - 1);
                        }
                    }
                    None => break,
                }
            }
        }
        if self.num.is_zero() {
            self.den.clear();
        }
    }

    /// Full reduction: removes every common factor via the multivariate gcd.
    pub fn reduce_full(&mut self) {
        self.reduce();
        loop {
            let mut changed = false;
            let factors: Vec<(LaurentPoly, u32)> = self.den.iter().map(|(f, &k)| (f.clone(), k)).collect();
            for (f, k) in factors {
                let g = gcd(&self.num, &f);
                if g.is_constant() {
                    continue;
                }
                let num = self.num.div_exact(&g).expect("gcd divides numerator");
                let rest = f.div_exact(&g).expect("gcd divides factor");
                self.num = num;
                self.den.remove(&f);
                if k > 1 {
                    *self.den.entry(f.clone()).or_insert(0) += k - 1;
                }
                if !rest.is_constant() {
                    self.push_factor(rest, 1).expect("nonzero");
                } else {
                    let c = rest.coeff(&[0, 0, 0]);
                    self.num = self.num.scale(&c.recip());
                }
                changed = true;
                break;
            }
            if !changed {
                break;
            }
        }
        if self.num.is_zero() {
            self.den.clear();
        }
    }

    /// Laurent polynomial value, if the denominator is trivial after reduction.
    pub fn as_polynomial(&self) -> Option<LaurentPoly> {
        let mut r = self.clone();
        r.reduce();
        if r.den.is_empty() {
            Some(r.num)
        } else {
            None
        }
    }

    /// Exact evaluation; names the vanishing factor on failure.
    pub fn eval_with(&self, pow: &dyn Fn(usize, i64) -> Result<Rational>) -> Result<Rational> {
        let mut den = <Rational as One>::one();
        for (f, &k) in &self.den {
            let v = f.eval_with(pow)?;
            if Zero::is_zero(&v) {
                return Err(Error::DivisionByZero(format!("denominator factor {} vanishes", super::text::format_poly(f))));
            }
            den *= num_traits::pow(v, k as usize);
        }
        Ok(self.num.eval_with(pow)? / den)
    }

    fn lcm_with(&self, other: &Self) -> BTreeMap<LaurentPoly, u32> {
        let mut l = self.den.clone();
        for (f, &k) in &other.den {
            let e = l.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        l
    }

    fn lift(&self, target: &BTreeMap<LaurentPoly, u32>) -> LaurentPoly {
        let mut n = self.num.clone();
        for (f, &k) in target {
            let have = self.den.get(f).copied().unwrap_or(0);
            for _ in have..k {
                n = &n * f;
            }
        }
        n
    }

    fn combine(&self, other: &Self, sign: i8) -> Self {
        if other.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return if sign > 0 { other.clone() } else { other.negated() };
        }
        if self.den == other.den {
            let num = if sign > 0 { &self.num + &other.num } else { &self.num - &other.num };
            let den = if num.is_zero() { BTreeMap::new() } else { self.den.clone() };
            return RationalFunction { num, den };
        }
        let l = self.lcm_with(other);
        let a = self.lift(&l);
        let b = other.lift(&l);
        let num = if sign > 0 { &a + &b } else { &a - &b };
        let den = if num.is_zero() { BTreeMap::new() } else { l };
        RationalFunction { num, den }
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        if self.den.is_empty() {
            return self.num.is_one();
        }
        self.minus(&Self::one()).is_zero()
    }

    fn plus(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    fn minus(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    fn times(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, &k) in &other.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        RationalFunction { num: &self.num * &other.num, den }
    }

    fn negated(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    fn try_inverse(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero rational function".into()));
        }
        let mut r = RationalFunction { num: self.denominator(), den: BTreeMap::new() };
        if self.num.len() == 1 {
            let (e, c) = self.num.lex_least().unwrap();
            r.num = r.num.shift(&[-e[0], -e[1], -e[2]]).scale(&c.recip());
        } else {
            r.push_factor(self.num.clone(), 1)?;
        }
        Ok(r)
    }

    fn from_rational(r: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(r))
    }

    fn scaled(&self, r: &Rational) -> Self {
        RationalFunction { num: self.num.scale(r), den: if Zero::is_zero(r) { BTreeMap::new() } else { self.den.clone() } }
    }

    fn u_free(&self) -> Option<bool> {
        let mut r = self.clone();
        r.reduce_full();
        Some(!r.num.involves_u() && r.den.keys().all(|f| !f.involves_u()))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.minus(other).is_zero()
    }
}

impl CanonicalTerms for RationalFunction {
    fn canonical_terms(&self) -> Option<Vec<(Monomial, Rational)>> {
        let p = self.as_polynomial()?;
        Some(p.terms().map(|(e, c)| (Monomial(*e), c.clone())).collect())
    }

    fn from_canonical_terms(terms: Vec<(Monomial, Rational)>) -> Option<Self> {
        Some(Self::from_poly(LaurentPoly::from_terms(terms.into_iter().map(|(m, c)| (m.0, c)))))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = super::text::format_poly(&self.num);
        if self.den.is_empty() {
            return write!(f, "{num}");
        }
        write!(f, "({num}) / (")?;
        for (i, (p, k)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({})", super::text::format_poly(p))?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Grid};

    fn g() -> Grid {
        Grid::default()
    }

    #[test]
    fn self_quotient_is_one() {
        let x = RationalFunction::new(LaurentPoly::one_minus(g().u()), LaurentPoly::one_minus(g().q1())).unwrap();
        assert!(x.divided_by(&x).unwrap().is_one());
    }

    #[test]
    fn cancellation_through_gcd() {
        let a = LaurentPoly::one_minus(g().q1());
        let b = LaurentPoly::one_minus(g().q2());
        let mut r = RationalFunction::new(&a * &b, a.clone()).unwrap();
        r.reduce_full();
        assert_eq!(r.as_polynomial().unwrap(), b);
    }

    #[test]
    fn factor_normalization_moves_content() {
        // 1/(1 - q1^-1) = -q1/(1 - q1)
        let r = RationalFunction::factored(&int(1), Monomial::ONE, &[(g().q1().inv(), -1)]).unwrap();
        let s = RationalFunction::new(LaurentPoly::monomial(g().q1(), int(-1)), LaurentPoly::one_minus(g().q1())).unwrap();
        assert_eq!(r, s);
        assert_eq!(r.denominator_factors().count(), 1);
    }

    #[test]
    fn sum_with_distinct_denominators() {
        let x = RationalFunction::factored(&int(1), Monomial::ONE, &[(g().q1(), -1)]).unwrap();
        let y = RationalFunction::factored(&int(1), Monomial::ONE, &[(g().q2(), -1)]).unwrap();
        let s = x.plus(&y).minus(&x);
        assert_eq!(s, y);
        assert!(x.minus(&x).is_zero());
    }

    #[test]
    fn vanishing_factor_is_reported() {
        assert!(RationalFunction::factored(&int(1), Monomial::ONE, &[(Monomial::ONE, -1)]).is_err());
    }
}
