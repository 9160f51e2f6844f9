//! Nakajima-Yoshioka blowup relations and their coefficients `β^d_j`.
//!
//! A blowup relation reads
//! `β^d_j Z^{[l]}(u; q1, q2 | z) = Σ_{n ∈ ℤ+j/2} Z^{[l]}(u q1^{2n}; q1, q2/q1 | q1^{d'} z) Z^{[l]}(u q2^{2n}; q1/q2, q2 | q2^{d'} z)`
//! with `d' = d + l(j-1)/2`. After dividing out classical and one-loop
//! parts it becomes an identity between instanton series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{int, ratio, Backend, BackendKind, Field, Monomial, Order, ParameterPoint, PuiseuxSeries, Rational, RationalFunction};
use crate::nekrasov::{instanton_series, weighted_lattice_sum, BlowupBase, EpsilonPair, Level, Parity, Splitting};
use crate::{Error, Result};

/// One term `c (q1 q2)^p z^e` of a β coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaTerm {
    pub coeff: Rational,
    pub q_power: Rational,
    pub z_power: Rational,
}

/// A stored β coefficient, written in terms of the product `q1 q2` of its
/// Ω-background so it can be evaluated at any `(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaCoefficient {
    pub d: i64,
    pub j: Parity,
    pub l: Level,
    pub terms: Vec<BetaTerm>,
}

impl BetaCoefficient {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `β(A, B | s z)` as a series.
    pub fn series<B: Backend>(&self, eps: &EpsilonPair, zscale: Monomial, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
        let grid = backend.grid();
        let mut s = PuiseuxSeries::zero(grid, order.to_grid(grid)?);
        for t in &self.terms {
            let m = eps.product().pow_rational(&t.q_power, grid)? * zscale.pow_rational(&t.z_power, grid)?;
            s.add_term(grid.to_grid(&t.z_power)?, &backend.monomial(m)?.scaled(&t.coeff));
        }
        Ok(s)
    }
}

fn term(c: i64, p: Rational, e: Rational) -> BetaTerm {
    BetaTerm { coeff: int(c), q_power: p, z_power: e }
}

/// The tabulated coefficient `β^{d,[l]}_j(q1, q2 | z)`.
pub fn beta_coeff(d: i64, j: Parity, l: Level) -> Result<BetaCoefficient> {
    let one = || vec![term(1, int(0), int(0))];
    let terms = match (d, j, l.value()) {
        (-1..=1, Parity::Even, _) => one(),
        (-1, Parity::Odd, _) => vec![term(1, ratio(-1, 4), ratio(1, 4))],
        (0, Parity::Odd, _) => vec![],
        (1, Parity::Odd, _) => vec![term(-1, ratio(1, 4), ratio(1, 4))],
        (2, Parity::Even, 0) => vec![term(1, int(0), int(0)), term(-1, int(1), int(1))],
        (-2, Parity::Even, 0) => vec![term(1, int(0), int(0)), term(-1, int(-1), int(1))],
        (2, Parity::Even, 1) => one(),
        _ => return Err(Error::UnsupportedBeta { d, j: j.index(), l: l.value() }),
    };
    Ok(BetaCoefficient { d, j, l, terms })
}

/// The lattice side `Σ_n (blowup term)` at instanton level.
pub fn ny_sum<B: Backend>(base: &BlowupBase, level: Level, d: i64, j: Parity, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    weighted_lattice_sum(Splitting::Blowup, level, d, j, base, order, backend, |_| int(1))
}

/// `β^d_j Z^{[l]} - Σ_n (blowup term)` at the standard base `(u; q1, q2)`; zero when the relation holds.
pub fn ny_residual<B: Backend>(level: Level, d: i64, j: Parity, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    ny_residual_at(&BlowupBase::standard(backend.grid()), level, d, j, order, backend)
}

/// [`ny_residual`] built on an arbitrary base `(w; A, B)`.
pub fn ny_residual_at<B: Backend>(base: &BlowupBase, level: Level, d: i64, j: Parity, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    let beta = beta_coeff(d, j, level)?;
    let z = instanton_series(level, &base.eps, base.w, order, backend)?;
    let lhs = beta.series(&base.eps, Monomial::ONE, order, backend)?.mul(&z);
    Ok(lhs.sub(&ny_sum(base, level, d, j, order, backend)?))
}

/// The ratio `Σ_n (blowup term) / Z^{[l]}`: what `β^d_j` has to be.
///
/// Fails with [`Error::UDependentBeta`] if the ratio depends on `u`. The
/// symbolic backend inspects the coefficients; the point backend repeats the
/// computation at a second value of `u`.
pub fn derive_beta<B: Backend>(level: Level, j: Parity, d: i64, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    derive_beta_at(&BlowupBase::standard(backend.grid()), level, j, d, order, backend)
}

/// [`derive_beta`] on an arbitrary base `(u; A, B)`.
pub fn derive_beta_at<B: Backend>(base: &BlowupBase, level: Level, j: Parity, d: i64, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    let ratio_at = |b: &B| -> Result<PuiseuxSeries<B::Coeff>> {
        let z = instanton_series(level, &base.eps, base.w, order, b)?;
        ny_sum(base, level, d, j, order, b)?.divide(&z)
    };
    let beta = ratio_at(backend)?;
    let dependent = || Error::UDependentBeta { l: level.value(), j: j.index(), d };
    match backend.kind() {
        BackendKind::Symbolic => {
            if beta.iter().any(|(_, c)| c.u_free() != Some(true)) {
                return Err(dependent());
            }
        }
        BackendKind::Point => {
            let probe =
                backend.u_probe()?.ok_or_else(|| Error::InvalidArgument("u-independence check needs a backend with a second u value".into()))?;
            if ratio_at(&probe)? != beta {
                return Err(dependent());
            }
        }
    }
    Ok(beta)
}

fn valuation(x: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while !x.is_zero() && (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

fn rational_valuation(r: &Rational, p: u64) -> i64 {
    valuation(r.numer(), p) - valuation(r.denom(), p)
}

fn small_primes(r: &Rational) -> Vec<u64> {
    let mut out = Vec::new();
    for n in [r.numer().abs(), r.denom().clone()] {
        let mut n = n;
        let mut p = 2u64;
        while n > BigInt::from(1) && p < 10_000 {
            let bp = BigInt::from(p);
            if (&n % &bp).is_zero() {
                out.push(p);
                while (&n % &bp).is_zero() {
                    n /= &bp;
                }
            }
            p += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Writes an exact value as `±Q1^a Q2^b` at the given point, if possible.
///
/// Exponents are read off from prime valuations of `Q1` and `Q2`; the
/// candidate is then verified exactly.
pub fn recognize_monomial(c: &Rational, point: &ParameterPoint) -> Option<(Rational, Monomial)> {
    if Field::is_zero(c) {
        return None;
    }
    let (x, y) = (point.q1_root(), point.q2_root());
    let mut primes = small_primes(x);
    primes.extend(small_primes(y));
    primes.sort();
    primes.dedup();
    let rows: Vec<[i64; 3]> = primes.iter().map(|&p| [rational_valuation(x, p), rational_valuation(y, p), rational_valuation(c, p)]).collect();
    // find two independent rows and solve the 2x2 system
    let mut sol = None;
    'outer: for i in 0..rows.len() {
        for k in i + 1..rows.len() {
            let (r1, r2) = (rows[i], rows[k]);
            let det = r1[0] * r2[1] - r1[1] * r2[0];
            if det == 0 {
                continue;
            }
            let an = r1[2] * r2[1] - r1[1] * r2[2];
            let bn = r1[0] * r2[2] - r1[2] * r2[0];
            if an % det != 0 || bn % det != 0 {
                return None;
            }
            sol = Some((an / det, bn / det));
            break 'outer;
        }
    }
    let (a, b) = sol?;
    let v = pow(x, a) * pow(y, b);
    let sign = c / &v;
    if sign == int(1) || sign == int(-1) {
        Some((sign, Monomial::new(a, b, 0)))
    } else {
        None
    }
}

fn pow(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// Rewrites a point-backend series with `±Q1^a Q2^b` coefficients as a
/// symbolic one, for display. `None` if some coefficient is not of that form.
pub fn recognize_series(s: &PuiseuxSeries<Rational>, point: &ParameterPoint) -> Option<PuiseuxSeries<RationalFunction>> {
    let mut coeffs = BTreeMap::new();
    for (e, c) in s.iter() {
        let (sign, m) = recognize_monomial(c, point)?;
        coeffs.insert(e, RationalFunction::monomial(m, sign));
    }
    Some(PuiseuxSeries::from_coeffs(s.grid(), s.trunc(), coeffs))
}

/// `β^{d,[l]}_j(q1^{-1}, q2^{-1} | z) - (-1)^j β^{-d,[-l]}_j(q1, q2 | z)`, both derived.
pub fn beta_inversion_residual<B: Backend>(level: Level, j: Parity, d: i64, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    let grid = backend.grid();
    let inverted = BlowupBase { w: grid.u(), eps: EpsilonPair::standard(grid).inverted() };
    let left = derive_beta_at(&inverted, level, j, d, order, backend)?;
    let right = derive_beta(Level::signed(-level.value())?, j, -d, order, backend)?;
    let sign = if j == Parity::Odd { -1 } else { 1 };
    Ok(left.sub(&right.scale(&B::Coeff::from_rational(int(sign)))))
}

/// A grid exponent as a reduced fraction, e.g. `4/16` as `1/4`.
pub fn describe_exponent(e: i64, denominator: i64) -> String {
    let g = e.gcd(&denominator);
    let (n, d) = (e / g, denominator / g);
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Grid, PointBackend, SymbolicBackend};

    #[test]
    fn table_entries() {
        assert!(beta_coeff(0, Parity::Odd, Level::ZERO).unwrap().is_zero());
        assert_eq!(beta_coeff(2, Parity::Even, Level::ZERO).unwrap().terms.len(), 2);
        assert!(beta_coeff(3, Parity::Even, Level::ZERO).is_err());
        assert!(beta_coeff(-2, Parity::Even, Level::ONE).is_err());
        assert!(beta_coeff(2, Parity::Odd, Level::ZERO).is_err());
    }

    #[test]
    fn order_one_relation_symbolic() {
        let b = SymbolicBackend::new(Grid::default());
        let r = ny_residual(Level::ZERO, 0, Parity::Even, &Order::integer(1), &b).unwrap();
        assert!(r.is_zero(), "{r:?}");
    }

    #[test]
    fn recognizes_monomials() {
        let p = ParameterPoint::defaults()[0].clone();
        let m = Monomial::new(16, 16, 0);
        let v = -num_traits::pow(p.q1_root().clone(), 16) * num_traits::pow(p.q2_root().clone(), 16);
        assert_eq!(recognize_monomial(&v, &p), Some((int(-1), m)));
        assert_eq!(recognize_monomial(&ratio(7, 3), &p), None);
    }

    #[test]
    fn derived_beta_is_one_at_d0() {
        let g = Grid::default();
        let b = PointBackend::new(ParameterPoint::defaults()[0].clone(), g);
        let beta = derive_beta(Level::ZERO, Parity::Even, 0, &Order::integer(2), &b).unwrap();
        assert_eq!(beta, PuiseuxSeries::one(g, 32));
        assert_eq!(describe_exponent(4, 16), "1/4");
    }
}
