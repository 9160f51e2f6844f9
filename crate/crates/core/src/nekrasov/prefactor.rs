//! Ratios of classical and one-loop parts.
//!
//! The classical part of `Z(w; A, B | s z)` is `exp(-log(s z / (A B)) log²w / (4 log A log B))`.
//! Ratios of products of such factors are computed with formal symbols
//! `L = log u`, `Z = log z`, `a = log q1`, `b = log q2`; a valid shift
//! pattern leaves an exponent linear in them, which is a monomial times a
//! power of `z`.
//!
//! The one-loop part `(w; A, B)_∞ (w^{-1}; A, B)_∞` is a plethystic
//! exponential of `χ(w) = -(w + w^{-1}) / ((1 - A)(1 - B))`. When the
//! combination of `χ`s collapses to a finite sum `Σ c_m m`, the ratio is
//! `∏ (1 - m)^{-c_m}`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::EpsilonPair;
use crate::algebra::{int, Backend, Field, Grid, Monomial, Poly, Rational, RationalFunction};
use crate::{Error, Result};

/// One factor `Z(w; A, B | s z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZFactor {
    pub w: Monomial,
    pub eps: EpsilonPair,
    pub zscale: Monomial,
}

impl ZFactor {
    pub fn new(w: Monomial, eps: EpsilonPair, zscale: Monomial) -> Self {
        ZFactor { w, eps, zscale }
    }
}

/// `monomial * z^(z_exponent/D) * ∏ (1 - m)^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prefactor {
    pub monomial: Monomial,
    /// Grid units.
    pub z_exponent: i64,
    pub loop_factors: Vec<(Monomial, i64)>,
}

impl Prefactor {
    pub fn value<B: Backend>(&self, backend: &B) -> Result<B::Coeff> {
        backend.factored(&Rational::one(), self.monomial, &self.loop_factors)
    }
}

type Log = Poly<4>;
const L: usize = 0;
const Z: usize = 1;

fn log_of(m: Monomial, grid: Grid) -> Log {
    let d = grid.denominator();
    let [e1, e2, eu] = m.0;
    Log::from_terms([
        ([0, 0, 1, 0], Rational::new(e1.into(), d.into())),
        ([0, 0, 0, 1], Rational::new(e2.into(), d.into())),
        ([1, 0, 0, 0], Rational::new(eu.into(), d.into())),
    ])
}

/// Numerator and denominator of the classical exponent of one factor.
fn classical_exponent(f: &ZFactor, grid: Grid) -> (Log, Log) {
    let lu = log_of(f.w, grid);
    let la = log_of(f.eps.a(), grid);
    let lb = log_of(f.eps.b(), grid);
    let lz = &Log::var(Z) + &log_of(f.zscale, grid);
    let num = &(&(&lz - &la) - &lb) * &(&lu * &lu);
    let den = (&la * &lb).scale(&int(4));
    (num.scale(&int(-1)), den)
}

/// Exponent of `u`, `q1`, `q2` and `z` of `∏ Z_cl(factors) / ∏ Z_cl(reference)`.
pub fn classical_prefactor(factors: &[ZFactor], reference: &[ZFactor], grid: Grid) -> Result<(Monomial, i64)> {
    let mut parts: Vec<(Log, Log)> = Vec::new();
    for f in factors {
        parts.push(classical_exponent(f, grid));
    }
    for f in reference {
        let (n, d) = classical_exponent(f, grid);
        parts.push((n.scale(&int(-1)), d));
    }
    // normalize denominators so equal ones compare equal
    let mut dens: Vec<Log> = Vec::new();
    let mut idx = Vec::new();
    for (n, d) in parts.iter_mut() {
        let c = d.lex_least().map(|(_, c)| c.clone()).ok_or_else(|| Error::InvalidArgument("degenerate Ω-background".into()))?;
        *d = d.scale(&c.recip());
        *n = n.scale(&c.recip());
        let i = match dens.iter().position(|x| x == d) {
            Some(i) => i,
            None => {
                dens.push(d.clone());
                dens.len() - 1
            }
        };
        idx.push(i);
    }
    let common = dens.iter().fold(Log::one(), |acc, d| &acc * d);
    let mut num = Log::zero();
    for ((n, _), &i) in parts.iter().zip(&idx) {
        let others = dens.iter().enumerate().filter(|&(k, _)| k != i).fold(Log::one(), |acc, (_, d)| &acc * d);
        num = &num + &(n * &others);
    }
    let e = num
        .div_exact(&common)
        .filter(|q| q.is_polynomial())
        .ok_or_else(|| Error::QuadraticLogU("classical exponent is not polynomial in the logarithms".into()))?;
    if e.degree_in(L) > 1 || e.total_degree() > 1 {
        return Err(Error::QuadraticLogU(format!("{e:?}")));
    }
    if !e.coeff(&[0; 4]).is_zero() {
        return Err(Error::QuadraticLogU("constant term in the classical exponent".into()));
    }
    let m = grid.monomial(&e.coeff(&[0, 0, 1, 0]), &e.coeff(&[0, 0, 0, 1]), &e.coeff(&[1, 0, 0, 0]))?;
    let z = grid.to_grid(&e.coeff(&[0, 1, 0, 0]))?;
    Ok((m, z))
}

fn chi(f: &ZFactor) -> Result<RationalFunction> {
    let den = [(f.eps.a(), -1), (f.eps.b(), -1)];
    let x = RationalFunction::factored(&int(-1), f.w, &den)?;
    let y = RationalFunction::factored(&int(-1), f.w.inv(), &den)?;
    Ok(x.plus(&y))
}

/// `∏ Z_1loop(factors) / ∏ Z_1loop(reference)` as a finite product `∏ (1 - m)^e`.
pub fn one_loop_factor(factors: &[ZFactor], reference: &[ZFactor]) -> Result<Vec<(Monomial, i64)>> {
    let mut total = RationalFunction::zero();
    for f in factors {
        total = total.plus(&chi(f)?);
    }
    for f in reference {
        total = total.minus(&chi(f)?);
    }
    total.reduce_full();
    let p = total.as_polynomial().ok_or_else(|| Error::Telescoping(format!("character {total} has a nontrivial denominator")))?;
    let mut out = Vec::new();
    for (e, c) in p.terms() {
        if *e == [0, 0, 0] {
            return Err(Error::Telescoping("constant term in the character".into()));
        }
        if !c.is_integer() {
            return Err(Error::Telescoping(format!("non-integer multiplicity {c}")));
        }
        let k: i64 = c.to_integer().try_into().map_err(|_| Error::Telescoping("multiplicity overflow".into()))?;
        out.push((Monomial(*e), -k));
    }
    out.sort();
    Ok(out)
}

type Key = (Vec<ZFactor>, Vec<ZFactor>, Vec<ZFactor>, i64);

fn memo() -> &'static Mutex<HashMap<Key, Prefactor>> {
    static M: OnceLock<Mutex<HashMap<Key, Prefactor>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Classical and one-loop ratio together, memoized process-wide.
pub fn prefactor(factors: &[ZFactor], cl_reference: &[ZFactor], loop_reference: &[ZFactor], grid: Grid) -> Result<Prefactor> {
    let key = (factors.to_vec(), cl_reference.to_vec(), loop_reference.to_vec(), grid.denominator());
    if let Some(p) = memo().lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let (monomial, z_exponent) = classical_prefactor(factors, cl_reference, grid)?;
    let loop_factors = one_loop_factor(factors, loop_reference)?;
    let p = Prefactor { monomial, z_exponent, loop_factors };
    memo().lock().unwrap().insert(key, p.clone());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ny_factors(n2: i64, d: i64, g: Grid) -> Vec<ZFactor> {
        // n2 = 2n
        let (q1, q2, u) = (g.q1(), g.q2(), g.u());
        vec![
            ZFactor::new(u * q1.pow(n2), EpsilonPair::new(q1, q2 / q1).unwrap(), q1.pow(d)),
            ZFactor::new(u * q2.pow(n2), EpsilonPair::new(q1 / q2, q2).unwrap(), q2.pow(d)),
        ]
    }

    #[test]
    fn unshifted_is_trivial() {
        let g = Grid::default();
        let r = [ZFactor::new(g.u(), EpsilonPair::standard(g), Monomial::ONE)];
        let p = prefactor(&ny_factors(0, 0, g), &r, &r, g).unwrap();
        assert!(p.monomial.is_one());
        assert_eq!(p.z_exponent, 0);
        assert!(p.loop_factors.is_empty());
    }

    #[test]
    fn half_integer_shift_enters_at_quarter() {
        let g = Grid::default();
        let r = [ZFactor::new(g.u(), EpsilonPair::standard(g), Monomial::ONE)];
        let p = prefactor(&ny_factors(1, 0, g), &r, &r, g).unwrap();
        assert_eq!(p.z_exponent, 4);
        let p = prefactor(&ny_factors(2, 0, g), &r, &r, g).unwrap();
        assert_eq!(p.z_exponent, 16);
    }

    #[test]
    fn inconsistent_pattern_rejected() {
        let g = Grid::default();
        let f = [ZFactor::new(g.u(), EpsilonPair::standard(g), Monomial::ONE)];
        assert!(matches!(classical_prefactor(&f, &[], g), Err(Error::QuadraticLogU(_))));
    }
}
