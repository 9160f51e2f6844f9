use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Monomial, Rational};
use crate::{Error, Result};

/// Sparse Laurent polynomial in `N` variables with rational coefficients.
///
/// Terms are kept in lexicographic order of the exponent vectors and zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<[i64; N], Rational>,
}

/// Laurent polynomial in the root variables `(Q1, Q2, U)`.
pub type LaurentPoly = Poly<3>;

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term([0; N], c)
    }

    pub fn term(exps: [i64; N], c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { terms }
    }

    /// The `i`-th variable.
    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::term(e, Rational::one())
    }

    pub fn from_terms(iter: impl IntoIterator<Item = ([i64; N], Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; N]).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&[0; N]))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i64; N], &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64; N]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: [i64; N], c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    /// Lexicographically least term.
    pub fn lex_least(&self) -> Option<([i64; N], &Rational)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    /// Lexicographically greatest term.
    pub fn leading(&self) -> Option<([i64; N], &Rational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Componentwise minimum of the exponents.
    pub fn min_exponents(&self) -> [i64; N] {
        let mut m = [i64::MAX; N];
        for e in self.terms.keys() {
            for i in 0..N {
                m[i] = m[i].min(e[i]);
            }
        }
        if self.terms.is_empty() {
            [0; N]
        } else {
            m
        }
    }

    pub fn max_exponents(&self) -> [i64; N] {
        let mut m = [i64::MIN; N];
        for e in self.terms.keys() {
            for i in 0..N {
                m[i] = m[i].max(e[i]);
            }
        }
        if self.terms.is_empty() {
            [0; N]
        } else {
            m
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn shift(&self, by: &[i64; N]) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    let mut f = *e;
                    for i in 0..N {
                        f[i] += by[i];
                    }
                    (f, v.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Degree in variable `var` (maximum exponent).
    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Total degree of the highest term.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.iter().sum::<i64>()).max().unwrap_or(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Monomial content is stripped first; the remaining polynomials are
    /// divided with the lexicographic order.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let ma = self.min_exponents();
        let md = d.min_exponents();
        let a = self.shift(&neg(&ma));
        let b = d.shift(&neg(&md));
        let q = poly_div_exact(&a, &b)?;
        let mut off = [0; N];
        for i in 0..N {
            off[i] = ma[i] - md[i];
        }
        Some(q.shift(&off))
    }

    /// Evaluation with a value per variable.
    pub fn eval_with(&self, pow: impl Fn(usize, i64) -> Result<Rational>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    t *= pow(i, k)?;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation at rational values; zero values with negative powers fail.
    pub fn eval(&self, vals: &[Rational; N]) -> Result<Rational> {
        self.eval_with(|i, k| rational_pow(&vals[i], k))
    }
}

fn neg<const N: usize>(e: &[i64; N]) -> [i64; N] {
    let mut o = *e;
    for x in o.iter_mut() {
        *x = -*x;
    }
    o
}

fn poly_div_exact<const N: usize>(a: &Poly<N>, b: &Poly<N>) -> Option<Poly<N>> {
    let (lb, lbc) = b.leading()?;
    let lbc = lbc.clone();
    let mut rem = a.clone();
    let mut q = Poly::zero();
    while let Some((lr, lrc)) = rem.leading() {
        let mut e = [0; N];
        for i in 0..N {
            e[i] = lr[i] - lb[i];
            if e[i] < 0 {
                return None;
            }
        }
        let c = lrc / &lbc;
        let t = Poly::term(e, c);
        rem = &rem - &(&t * b);
        q = &q + &t;
    }
    Some(q)
}

/// `x^k` for a rational `x` and integer `k`.
pub(crate) fn rational_pow(x: &Rational, k: i64) -> Result<Rational> {
    if k >= 0 {
        Ok(num_traits::pow(x.clone(), k as usize))
    } else if x.is_zero() {
        Err(Error::DivisionByZero("negative power of zero".into()))
    } else {
        Ok(num_traits::pow(x.recip(), (-k) as usize))
    }
}

impl LaurentPoly {
    pub fn monomial(m: Monomial, c: Rational) -> Self {
        Poly::term(m.0, c)
    }

    /// `1 - m`.
    pub fn one_minus(m: Monomial) -> Self {
        let mut p = Poly::one();
        p.add_term(m.0, &-Rational::one());
        p
    }

    /// Whether `U` appears with a nonzero exponent.
    pub fn involves_u(&self) -> bool {
        self.terms.keys().any(|e| e[2] != 0)
    }
}

impl<const N: usize> Add for &Poly<N> {
    type Output = Poly<N>;
    fn add(self, o: &Poly<N>) -> Poly<N> {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (e, c) in &small.terms {
            r.add_term(*e, c);
        }
        r
    }
}

impl<const N: usize> Sub for &Poly<N> {
    type Output = Poly<N>;
    fn sub(self, o: &Poly<N>) -> Poly<N> {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, &-c);
        }
        r
    }
}

impl<const N: usize> Mul for &Poly<N> {
    type Output = Poly<N>;
    fn mul(self, o: &Poly<N>) -> Poly<N> {
        let mut r = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = [0; N];
                for i in 0..N {
                    e[i] = e1[i] + e2[i];
                }
                r.add_term(e, &(c1 * c2));
            }
        }
        r
    }
}

impl<const N: usize> Neg for &Poly<N> {
    type Output = Poly<N>;
    fn neg(self) -> Poly<N> {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl<const N: usize> Add for Poly<N> {
    type Output = Poly<N>;
    fn add(self, o: Poly<N>) -> Poly<N> {
        &self + &o
    }
}

impl<const N: usize> Sub for Poly<N> {
    type Output = Poly<N>;
    fn sub(self, o: Poly<N>) -> Poly<N> {
        &self - &o
    }
}

impl<const N: usize> Mul for Poly<N> {
    type Output = Poly<N>;
    fn mul(self, o: Poly<N>) -> Poly<N> {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Grid};

    #[test]
    fn difference_of_squares() {
        let g = Grid::default();
        let a = LaurentPoly::one_minus(g.u());
        let b = &LaurentPoly::one() + &LaurentPoly::monomial(g.u(), int(1));
        assert_eq!(&a * &b, LaurentPoly::one_minus(g.u().pow(2)));
    }

    #[test]
    fn exact_division_with_monomial_content() {
        let g = Grid::default();
        let a = LaurentPoly::one_minus(g.q1());
        let b = LaurentPoly::one_minus(g.q2());
        let prod = (&a * &b).shift(&[-3, 5, 0]);
        let q = prod.div_exact(&a).unwrap();
        assert_eq!(q, b.shift(&[-3, 5, 0]));
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn evaluation() {
        let p = Poly::<2>::from_terms([([1, -1], int(3)), ([0, 0], int(1))]);
        let v = p.eval(&[int(2), int(4)]).unwrap();
        assert_eq!(v, crate::algebra::ratio(5, 2));
    }
}
