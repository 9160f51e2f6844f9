//! Bilinear relations from the `-2` blowup.
//!
//! The building block is the lattice sum
//! `Σ_{n ∈ ℤ+j/2} ε^n (ℓ_n)^{-1} Z^{[l]}(u q1^{2n}; q1², q2/q1 | q1^d z) Z^{[l]}(u q2^{2n}; q1/q2, q2² | q2^d z)`,
//! and a relation is a linear combination of such sums with coefficients
//! that are finite sums `c q1^a q2^b z^e`. Besides checking relations
//! directly, this module replays the convolution argument that proves them:
//! a second blowup collapses a double lattice sum to products of β
//! coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{int, ratio, Backend, Field, Grid, Monomial, Order, PuiseuxSeries, Rational};
use crate::blowup::beta_coeff;
use crate::nekrasov::{
    instanton_series, prefactor, product_term, weighted_lattice_sum, BlowupBase, EpsilonPair, Level, Parity, Sign, Splitting, ZFactor,
};
use crate::{Error, Result};

/// One term `c q1^a q2^b z^e` of a relation coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefTerm {
    pub coeff: Rational,
    pub q1: Rational,
    pub q2: Rational,
    pub z: Rational,
}

impl CoefTerm {
    pub fn new(coeff: i64, q1: Rational, q2: Rational, z: Rational) -> Self {
        CoefTerm { coeff: int(coeff), q1, q2, z }
    }

    pub fn one() -> Self {
        CoefTerm::new(1, int(0), int(0), int(0))
    }
}

/// `Σ c q1^a q2^b z^e` as a series.
pub fn coefficient_series<B: Backend>(terms: &[CoefTerm], order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    let grid = backend.grid();
    let mut s = PuiseuxSeries::zero(grid, order.to_grid(grid)?);
    for t in terms {
        let m = grid.q1().pow_rational(&t.q1, grid)? * grid.q2().pow_rational(&t.q2, grid)?;
        s.add_term(grid.to_grid(&t.z)?, &backend.monomial(m)?.scaled(&t.coeff));
    }
    Ok(s)
}

/// `Σ_{n ∈ ℤ+j/2} ε^{n-j/2} (−2 blowup term)` at the standard base `(u; q1, q2)`.
pub fn minus2_sum<B: Backend>(d: i64, j: Parity, eps: Sign, level: Level, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    minus2_sum_at(&BlowupBase::standard(backend.grid()), d, j, eps, level, order, backend)
}

/// [`minus2_sum`] on an arbitrary base.
pub fn minus2_sum_at<B: Backend>(
    base: &BlowupBase,
    d: i64,
    j: Parity,
    eps: Sign,
    level: Level,
    order: &Order,
    backend: &B,
) -> Result<PuiseuxSeries<B::Coeff>> {
    let shift = j.index() as i64;
    weighted_lattice_sum(Splitting::Minus2, level, d, j, base, order, backend, |two_n| int(eps.pow((two_n - shift) / 2)))
}

/// `Σ_n s^{n-j/2} (blowup term)` over `|n| ≤ window`: a truncated Fourier
/// sum in the spirit of a tau function. Unlike [`minus2_sum`] the window is
/// taken as given, so nothing guarantees that omitted terms vanish.
#[allow(clippy::too_many_arguments)]
pub fn fourier_sum<B: Backend>(
    splitting: Splitting,
    level: Level,
    d: i64,
    j: Parity,
    s: &Rational,
    window: i64,
    order: &Order,
    backend: &B,
) -> Result<PuiseuxSeries<B::Coeff>> {
    use crate::nekrasov::{reduced_term, ShiftSpec};
    let grid = backend.grid();
    let base = BlowupBase::standard(grid);
    let shift = j.index() as i64;
    let mut sum = PuiseuxSeries::zero(grid, order.to_grid(grid)?);
    for two_n in -2 * window - shift..=2 * window + shift {
        if two_n.rem_euclid(2) != shift {
            continue;
        }
        let k = (two_n - shift) / 2;
        let w = if k >= 0 { num_traits::pow(s.clone(), k as usize) } else { num_traits::pow(s.recip(), (-k) as usize) };
        let spec = ShiftSpec::new(&ratio(two_n, 2), d, level, j, splitting)?;
        if let Some(t) = reduced_term(&spec, &base, order, backend)? {
            sum = sum.add(&t.scale(&B::Coeff::from_rational(w)));
        }
    }
    Ok(sum)
}

/// The bilinear relations checked by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationId {
    R424,
    RB5,
    RB5m,
    R423,
    R422,
    /// The level-1 relation in the form that actually holds.
    RCS1,
    /// The level-1 relation with the shifts exactly as it is usually printed.
    #[serde(rename = "RCS1-printed")]
    RCS1Printed,
}

impl RelationId {
    pub const ALL: [RelationId; 7] =
        [RelationId::R424, RelationId::RB5, RelationId::RB5m, RelationId::R423, RelationId::R422, RelationId::RCS1, RelationId::RCS1Printed];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::R424 => "R424",
            RelationId::RB5 => "RB5",
            RelationId::RB5m => "RB5m",
            RelationId::R423 => "R423",
            RelationId::R422 => "R422",
            RelationId::RCS1 => "RCS1",
            RelationId::RCS1Printed => "RCS1-printed",
        }
    }

    /// Signs the relation is meaningful for.
    pub fn signs(self) -> &'static [Sign] {
        match self {
            RelationId::R422 => &[Sign::Minus],
            RelationId::RCS1Printed => &[Sign::Plus],
            _ => &[Sign::Plus, Sign::Minus],
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationId::ALL.into_iter().find(|r| r.name().eq_ignore_ascii_case(s)).ok_or_else(|| Error::Parse(format!("unknown relation {s:?}")))
    }
}

/// `Σ coefficient_i · minus2_sum(d_i)`, expected to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minus2Relation {
    pub id: RelationId,
    pub j: Parity,
    pub eps: Sign,
    pub level: Level,
    pub terms: Vec<(i64, Vec<CoefTerm>)>,
}

impl Minus2Relation {
    /// For even-sector relations `ε` only flips the sign of half-integer
    /// z-powers, so coefficients carrying `z^{1/2}` pick up a factor `ε`.
    pub fn new(id: RelationId, eps: Sign) -> Result<Self> {
        if !id.signs().contains(&eps) {
            return Err(Error::InvalidArgument(format!("{id} is not defined for ε = {eps}")));
        }
        let e = eps.value();
        let half = ratio(1, 2);
        let zero = || int(0);
        let one = || vec![CoefTerm::one()];
        let neg = |ts: Vec<CoefTerm>| ts.into_iter().map(|t| CoefTerm { coeff: -t.coeff, ..t }).collect::<Vec<_>>();
        // 1 - (q1 q2)^{p} z^{1/2}
        let one_minus = |p: Rational| vec![CoefTerm::one(), CoefTerm::new(-e, p.clone(), p, half.clone())];
        let (j, level, terms) = match id {
            RelationId::R424 => (Parity::Even, Level::ZERO, vec![(1, one()), (-1, neg(one()))]),
            RelationId::RB5 => (Parity::Even, Level::ZERO, vec![(2, one()), (0, neg(one_minus(half.clone())))]),
            RelationId::RB5m => (Parity::Even, Level::ZERO, vec![(-2, one()), (0, neg(one_minus(-half.clone())))]),
            RelationId::R423 => {
                let q = ratio(1, 4);
                (Parity::Odd, Level::ZERO, vec![(1, one()), (-1, vec![CoefTerm::new(-e, q.clone(), q, zero())])])
            }
            RelationId::R422 => (Parity::Odd, Level::ZERO, vec![(0, one())]),
            RelationId::RCS1 => {
                (Parity::Even, Level::ONE, vec![(2, one()), (0, neg(one())), (1, vec![CoefTerm::new(e, half.clone(), half.clone(), half.clone())])])
            }
            RelationId::RCS1Printed => (Parity::Even, Level::ONE, vec![(2, one()), (1, neg(one_minus(half.clone())))]),
        };
        Ok(Minus2Relation { id, j, eps, level, terms })
    }

    /// Every relation at every sign it is meaningful for.
    pub fn all() -> Vec<Minus2Relation> {
        RelationId::ALL.into_iter().flat_map(|id| id.signs().iter().map(move |&e| Minus2Relation::new(id, e).expect("listed sign"))).collect()
    }
}

/// The signed combination of `-2` sums making up the relation.
pub fn relation_residual<B: Backend>(rel: &Minus2Relation, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    let grid = backend.grid();
    let mut acc = PuiseuxSeries::zero(grid, order.to_grid(grid)?);
    for (d, coef) in &rel.terms {
        let s = minus2_sum(*d, rel.j, rel.eps, rel.level, order, backend)?;
        acc = acc.add(&coefficient_series(coef, order, backend)?.mul(&s));
    }
    Ok(acc)
}

/// Splits an even-sector residual into its integer and half-integer z-power parts.
pub fn split_half_integer<C: Field>(s: &PuiseuxSeries<C>) -> (PuiseuxSeries<C>, PuiseuxSeries<C>) {
    let d = s.grid().denominator();
    (s.restrict_exponents(d, 0), s.restrict_exponents(d, d / 2))
}

// ---------------------------------------------------------------------------
// convolution replay

/// `β^{d1}_{i1}(q1q2, q2/q1 | (q1q2)^{d2} z) · β^{d2}_{i2}(q1q2, q2² | z)`.
pub fn beta_product<B: Backend>(
    level: Level,
    (d1, i1): (i64, Parity),
    (d2, i2): (i64, Parity),
    order: &Order,
    backend: &B,
) -> Result<PuiseuxSeries<B::Coeff>> {
    let g = backend.grid();
    let (q1, q2) = (g.q1(), g.q2());
    let first = beta_coeff(d1, i1, level)?;
    let second = beta_coeff(d2, i2, level)?;
    if first.is_zero() || second.is_zero() {
        return Ok(PuiseuxSeries::zero(g, order.to_grid(g)?));
    }
    let a = first.series(&EpsilonPair::new(q1 * q2, q2 / q1)?, (q1 * q2).pow(d2), order, backend)?;
    let b = second.series(&EpsilonPair::new(q1 * q2, q2.pow(2))?, Monomial::ONE, order, backend)?;
    Ok(a.mul(&b))
}

/// The collapsed coefficient `Σ_i ε^i β^{d1}_{i+j}(…) β^{d2}_i(…)` of a convolution.
pub fn collapsed_coefficient<B: Backend>(
    d1: i64,
    d2: i64,
    j: Parity,
    eps: Sign,
    level: Level,
    order: &Order,
    backend: &B,
) -> Result<PuiseuxSeries<B::Coeff>> {
    let g = backend.grid();
    let mut acc = PuiseuxSeries::zero(g, order.to_grid(g)?);
    for i in [Parity::Even, Parity::Odd] {
        let outer = Parity::from_index((i.index() + j.index()) % 2)?;
        let t = beta_product(level, (d1, outer), (d2, i), order, backend)?;
        acc = acc.add(&t.scale(&B::Coeff::from_rational(int(eps.pow(i.index() as i64)))));
    }
    Ok(acc)
}

/// The closed forms of the collapsed coefficients as listed for the
/// relations' proofs, where one is given.
pub fn listed_coefficient(d1: i64, d2: i64, j: Parity, eps: Sign) -> Option<Vec<CoefTerm>> {
    let e = eps.value();
    let q = |n: i64| ratio(n, 4);
    let t = |c: i64, a: i64, b: i64| CoefTerm::new(c, q(a), q(b), q(1));
    Some(match (j, d1, d2) {
        (Parity::Even, 0, 0) | (Parity::Even, 1, 0) | (Parity::Even, 0, 1) => vec![CoefTerm::one()],
        (Parity::Even, 1, -1) => vec![CoefTerm::one(), CoefTerm::new(-e, q(-2), q(-2), q(2))],
        (Parity::Even, -1, 1) => vec![CoefTerm::one(), CoefTerm::new(-e, q(2), q(2), q(2))],
        (Parity::Odd, 1, 1) => vec![t(-1, 1, 3), t(-e, 1, 3)],
        (Parity::Odd, 1, 0) => vec![t(-1, 0, 2)],
        (Parity::Odd, 0, 1) => vec![t(-e, 1, 3)],
        (Parity::Odd, 0, 0) => vec![],
        (Parity::Odd, 1, -1) => vec![t(e, -1, -3), t(-1, -1, 1)],
        (Parity::Odd, -1, 1) => vec![t(1, -1, 1), t(-e, -1, 5)],
        (Parity::Odd, -1, 0) => vec![t(1, 0, -2)],
        (Parity::Odd, 0, -1) => vec![t(e, -1, -3)],
        (Parity::Odd, -1, -1) => vec![t(1, -1, -3), t(e, -1, -3)],
        _ => return None,
    })
}

/// The `(d1, d2)` pairs whose collapsed coefficient is listed, per sector.
pub fn listed_cases(j: Parity) -> Vec<(i64, i64)> {
    match j {
        Parity::Even => vec![(0, 0), (1, -1), (-1, 1), (1, 0), (0, 1)],
        Parity::Odd => vec![(1, 1), (1, 0), (0, 1), (0, 0), (1, -1), (-1, 1), (-1, 0), (0, -1), (-1, -1)],
    }
}

/// Result of replaying one convolution.
#[derive(Clone, Debug)]
pub struct ConvolutionReplay<C: Field> {
    /// Direct double lattice sum divided by `Z(u; q1q2, q2²)`.
    pub direct: PuiseuxSeries<C>,
    /// The same coefficient assembled from β's.
    pub collapsed: PuiseuxSeries<C>,
    /// The closed form, when one is listed.
    pub listed: Option<PuiseuxSeries<C>>,
}

impl<C: Field> ConvolutionReplay<C> {
    /// `direct - collapsed`.
    pub fn residual(&self) -> PuiseuxSeries<C> {
        self.direct.sub(&self.collapsed)
    }

    /// `direct - listed`, if a closed form is listed.
    pub fn listed_residual(&self) -> Option<PuiseuxSeries<C>> {
        self.listed.as_ref().map(|l| self.direct.sub(l))
    }
}

/// Outward rings of a half-integer square lattice: ring `r` holds the points
/// `(x, y) ≡ (j, j) mod 2` with `max(|x|, |y|) = j + 2r`, in units of `1/2`.
fn ring(j: i64, r: i64) -> Vec<(i64, i64)> {
    let k = j + 2 * r;
    let mut out = Vec::new();
    for x in (-k..=k).step_by(2) {
        for y in (-k..=k).step_by(2) {
            if x.abs() == k || y.abs() == k {
                out.push((x, y));
            }
        }
    }
    out
}

const MAX_RINGS: i64 = 64;

/// Sums `term(x, y)` over the half-integer lattice ring by ring, stopping
/// after two consecutive rings in which every point lies beyond the
/// truncation order. `term` returns `None` for such points.
fn ring_sum<C: Field>(grid: Grid, trunc: i64, j: i64, term: impl Fn(i64, i64) -> Result<Option<PuiseuxSeries<C>>>) -> Result<PuiseuxSeries<C>> {
    let mut sum = PuiseuxSeries::zero(grid, trunc);
    let mut empty = 0;
    for r in 0..MAX_RINGS {
        let mut any = false;
        for (x, y) in ring(j, r) {
            if let Some(t) = term(x, y)? {
                sum = sum.add(&t);
                any = true;
            }
        }
        empty = if any { 0 } else { empty + 1 };
        if empty == 2 {
            return Ok(sum);
        }
    }
    Err(Error::LatticeWindow { n: format!("ring {MAX_RINGS}"), exponent: "not exceeded".into() })
}

/// The three factors of one convolution summand at `(m, n) = (x/2, y/2)`.
fn convolution_factors(x: i64, y: i64, zs: [Monomial; 3], grid: Grid) -> Result<[ZFactor; 3]> {
    let (q1, q2, u) = (grid.q1(), grid.q2(), grid.u());
    Ok([
        ZFactor::new(u * (q1 * q2).pow(x), EpsilonPair::new(q1 * q2, q1.pow(-2))?, zs[0]),
        ZFactor::new(u * q1.pow(y) * q2.pow(x), EpsilonPair::new(q1.pow(2), q2 / q1)?, zs[1]),
        ZFactor::new(u * q2.pow(x + y), EpsilonPair::new(q1 / q2, q2.pow(2))?, zs[2]),
    ])
}

fn convolution_reference(grid: Grid) -> Result<ZFactor> {
    let (q1, q2) = (grid.q1(), grid.q2());
    Ok(ZFactor::new(grid.u(), EpsilonPair::new(q1 * q2, q2.pow(2))?, Monomial::ONE))
}

/// Replays the convolution of two `-2` relations with shifts `d1`, `d2`:
/// the direct sum over `m, n ∈ ℤ+j/2` of `ε^{m+n}` times three shifted
/// level-0 partition functions, divided by `Z(u; q1q2, q2²)`, compared with
/// its β-product form.
pub fn convolution_replay<B: Backend>(d1: i64, d2: i64, j: Parity, eps: Sign, order: &Order, backend: &B) -> Result<ConvolutionReplay<B::Coeff>> {
    if d1.abs() > 1 || d2.abs() > 1 {
        return Err(Error::InvalidArgument(format!("convolution shifts must satisfy |d| ≤ 1, got ({d1}, {d2})")));
    }
    let grid = backend.grid();
    let trunc = order.to_grid(grid)?;
    let (q1, q2) = (grid.q1(), grid.q2());
    let level = Level::ZERO;
    let d12 = d1 + d2;
    let zs = [(q1 * q2).pow(d12), q1.pow(d2 - d1) * q2.pow(d12), q2.pow(2 * d2)];
    let reference = [convolution_reference(grid)?];
    let jj = j.index() as i64;
    let direct = ring_sum(grid, trunc, jj, |x, y| {
        let f = convolution_factors(x, y, zs, grid)?;
        let t = product_term(&f, &reference, &reference, level, order, backend)?;
        let w = B::Coeff::from_rational(int(eps.pow((x + y) / 2)));
        Ok(t.map(|t| t.scale(&w)))
    })?;
    let z = instanton_series(level, &reference[0].eps, reference[0].w, order, backend)?;
    let listed = match listed_coefficient(d1, d2, j, eps) {
        Some(ts) => Some(coefficient_series(&ts, order, backend)?),
        None => None,
    };
    Ok(ConvolutionReplay { direct: direct.divide(&z)?, collapsed: collapsed_coefficient(d1, d2, j, eps, level, order, backend)?, listed })
}

/// One summand of the level-1 modified convolution, together with what it
/// should collapse to.
#[derive(Clone, Debug)]
pub struct CsConvolutionTerm<C: Field> {
    pub d: i64,
    /// Direct sum divided by `Z^{[1]}(u; q1q2, q2²)`.
    pub direct: PuiseuxSeries<C>,
    pub expected: PuiseuxSeries<C>,
}

/// Result of the level-1 modified convolution.
#[derive(Clone, Debug)]
pub struct CsConvolutionReplay<C: Field> {
    pub terms: Vec<CsConvolutionTerm<C>>,
    /// `β^{-1}_0 β^1_0 + β^{-1}_1 β^1_1 - (β^0_0 β^0_0 + β^0_1 β^0_1 - (q1q2)^{1/2} z^{1/2}(β^0_0 β^1_0 + q2^{-1/2} β^{-1}_1 β^0_1))`.
    pub beta_identity: PuiseuxSeries<C>,
}

impl<C: Field> CsConvolutionReplay<C> {
    /// Sum of the relation's convolved terms; zero when the level-1 relation holds.
    pub fn residual(&self) -> PuiseuxSeries<C> {
        let mut it = self.terms.iter().map(|t| &t.direct);
        let first = it.next().expect("at least one term").clone();
        it.fold(first, |acc, s| acc.add(s))
    }

    /// Largest deviation of a term from its expected collapse.
    pub fn term_residuals(&self) -> Vec<(i64, PuiseuxSeries<C>)> {
        self.terms.iter().map(|t| (t.d, t.direct.sub(&t.expected))).collect()
    }
}

/// The level-1 convolution with a parity-dependent shift: for the relation
/// term `c z^{e/2} Σ(d)` the summand at `m, n ∈ ℤ` is shifted by
/// `s = -1` when `m + n² + e` is even and `s = 0` otherwise.
pub fn cs_convolution_replay<B: Backend>(order: &Order, backend: &B) -> Result<CsConvolutionReplay<B::Coeff>> {
    let grid = backend.grid();
    let trunc = order.to_grid(grid)?;
    let (q1, q2) = (grid.q1(), grid.q2());
    let level = Level::ONE;
    let reference = [convolution_reference(grid)?];
    let z = instanton_series(level, &reference[0].eps, reference[0].w, order, backend)?;
    let c = (q1 * q2).pow_ratio(1, 2, grid)?;
    let half = grid.denominator() / 2;

    let rel = Minus2Relation::new(RelationId::RCS1, Sign::Plus)?;
    let mut terms = Vec::new();
    for (d, coef) in &rel.terms {
        // each coefficient of the relation is a single monomial c q^a z^{e/2}
        let [t] = coef.as_slice() else { unreachable!("single-term coefficient") };
        let mono = q1.pow_rational(&t.q1, grid)? * q2.pow_rational(&t.q2, grid)?;
        let e = grid.to_grid(&t.z)? / half;
        let direct = ring_sum(grid, trunc, 0, |x, y| {
            let (m, n) = (x / 2, y / 2);
            let p = (n * n + e).rem_euclid(2);
            let s = if (m + p).rem_euclid(2) == 0 { -1 } else { 0 };
            let zs = [(q1 * q2).pow(s), q1.pow(*d) * q2.pow(s), q2.pow(d + s)];
            let f = convolution_factors(x, y, zs, grid)?;
            let pre = prefactor(&f, &reference, &reference, grid)?;
            let zexp = pre.z_exponent + e * half;
            if zexp > trunc || trunc < e * half {
                return Ok(None);
            }
            let sub = Order::new(grid.from_grid(trunc - e * half))?;
            let Some(body) = product_term(&f, &reference, &reference, level, &sub, backend)? else { return Ok(None) };
            let k = backend.monomial(mono * q2.pow_ratio(s * e, 2, grid)?)?.scaled(&t.coeff);
            Ok(Some(PuiseuxSeries::zero(grid, trunc).add(&body.shift(e * half)).scale(&k)))
        })?;
        let expected = match d {
            2 => coefficient_series(&[CoefTerm::one(), CoefTerm::new(-1, ratio(1, 2), ratio(1, 2), ratio(1, 2))], order, backend)?,
            0 => coefficient_series(&[CoefTerm::new(-1, int(0), int(0), int(0))], order, backend)?,
            _ => PuiseuxSeries::term(grid, trunc, half, backend.monomial(c)?),
        };
        terms.push(CsConvolutionTerm { d: *d, direct: direct.divide(&z)?, expected });
    }
    Ok(CsConvolutionReplay { terms, beta_identity: cs_beta_identity(order, backend)? })
}

/// The β identity behind the level-1 relation; returns `lhs - rhs`.
pub fn cs_beta_identity<B: Backend>(order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    let grid = backend.grid();
    let trunc = order.to_grid(grid)?;
    let (l, e, o) = (Level::ONE, Parity::Even, Parity::Odd);
    let bp = |a: (i64, Parity), b: (i64, Parity)| beta_product(l, a, b, order, backend);
    let lhs = bp((-1, e), (1, e))?.add(&bp((-1, o), (1, o))?);
    let inner = bp((0, e), (1, e))?.add(&bp((-1, o), (0, o))?.scale(&backend.monomial(grid.q2().pow_ratio(-1, 2, grid)?)?));
    let c = PuiseuxSeries::term(grid, trunc, grid.denominator() / 2, backend.monomial((grid.q1() * grid.q2()).pow_ratio(1, 2, grid)?)?);
    let rhs = bp((0, e), (0, e))?.add(&bp((0, o), (0, o))?).sub(&c.mul(&inner));
    Ok(lhs.sub(&rhs))
}

/// `(1 - (q1 q2³ z)^{1/2})(β^1_0 β^1_0 + β^1_1 β^1_1) - β^2_0(q1q2, q2² | z)` at
/// level 0: the convolution route to the `d = 2` coefficient.
pub fn beta20_convolution_identity<B: Backend>(order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    let grid = backend.grid();
    let (q1, q2) = (grid.q1(), grid.q2());
    let (l, e, o) = (Level::ZERO, Parity::Even, Parity::Odd);
    let sum = beta_product(l, (1, e), (1, e), order, backend)?.add(&beta_product(l, (1, o), (1, o), order, backend)?);
    let factor = coefficient_series(&[CoefTerm::one(), CoefTerm::new(-1, ratio(1, 2), ratio(3, 2), ratio(1, 2))], order, backend)?;
    let beta2 = beta_coeff(2, e, l)?.series(&EpsilonPair::new(q1 * q2, q2.pow(2))?, Monomial::ONE, order, backend)?;
    Ok(factor.mul(&sum).sub(&beta2))
}

// ---------------------------------------------------------------------------
// odd-sector sufficiency

/// Variables `Q1, Q2, U, b, b'` for the odd-sector determinant.
type DetPoly = crate::algebra::Poly<5>;

fn det_entry(d12: i64, sign: i64, p: i64, b: usize, grid: Grid) -> Result<DetPoly> {
    let dd = grid.denominator();
    let ex = |num: i64, den: i64| grid.scale_exponent(dd, num, den);
    // u^{±d12/4} (q1 q2²)^{d12/8} b q2^{d12 p}
    let mut e = [ex(d12, 8)?, ex(2 * d12, 8)? + dd * d12 * p, ex(sign * d12, 4)?, 0, 0];
    e[3 + b] = 1;
    Ok(DetPoly::term(e, int(1)))
}

/// Checks the determinant of the 2×2 system behind odd-sector relations
/// with shift classes `d12 ≠ d12'` against its factored form, as an identity
/// in `q1, q2, u` and the two normalization symbols. Returns the `u`-factor
/// `u^{(d12-d12')/4} - u^{(d12'-d12)/4}` whose non-vanishing is required.
pub fn sufficiency_determinant(d12: i64, d12p: i64, p: i64, grid: Grid) -> Result<(bool, Monomial, Monomial)> {
    if d12 == d12p {
        return Err(Error::InvalidArgument("the two shift classes must differ".into()));
    }
    let m = [[det_entry(d12, 1, p, 0, grid)?, det_entry(d12, -1, p, 1, grid)?], [det_entry(d12p, 1, p, 0, grid)?, det_entry(d12p, -1, p, 1, grid)?]];
    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    let dd = grid.denominator();
    let s = d12 + d12p;
    let pref = DetPoly::term([grid.scale_exponent(dd, s, 8)?, grid.scale_exponent(dd, 2 * s, 8)? + dd * s * p, 0, 1, 1], int(1));
    let up = grid.scale_exponent(dd, d12 - d12p, 4)?;
    let uf = &DetPoly::term([0, 0, up, 0, 0], int(1)) - &DetPoly::term([0, 0, -up, 0, 0], int(1));
    let expect = &pref * &uf;
    Ok((det == expect, Monomial([0, 0, up]), Monomial([0, 0, -up])))
}

/// [`sufficiency_determinant`] plus evaluation of its `u`-factor on `backend`;
/// `Ok(true)` when the factored form matches and the factor is nonzero.
pub fn sufficiency_check<B: Backend>(d12: i64, d12p: i64, p: i64, backend: &B) -> Result<bool> {
    let (ok, a, b) = sufficiency_determinant(d12, d12p, p, backend.grid())?;
    let factor = backend.monomial(a)?.minus(&backend.monomial(b)?);
    Ok(ok && !factor.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ParameterPoint, PointBackend};

    fn backend() -> PointBackend {
        PointBackend::new(ParameterPoint::defaults()[0].clone(), Grid::default())
    }

    #[test]
    fn relation_ids_parse() {
        for id in RelationId::ALL {
            assert_eq!(id.name().parse::<RelationId>().unwrap(), id);
        }
        assert!("R999".parse::<RelationId>().is_err());
    }

    #[test]
    fn leading_exponents() {
        let b = backend();
        let k = Order::integer(1);
        let even = minus2_sum(0, Parity::Even, Sign::Plus, Level::ZERO, &k, &b).unwrap();
        assert_eq!(even.valuation(), 0);
        let odd = minus2_sum(1, Parity::Odd, Sign::Plus, Level::ZERO, &k, &b).unwrap();
        // z^{1/8}
        assert_eq!(odd.valuation(), 2);
    }

    #[test]
    fn r424_at_low_order() {
        let b = backend();
        let rel = Minus2Relation::new(RelationId::R424, Sign::Plus).unwrap();
        assert!(relation_residual(&rel, &Order::integer(1), &b).unwrap().is_zero());
    }

    #[test]
    fn single_term_fourier_sum_is_product() {
        let b = backend();
        let g = b.grid();
        let k = Order::integer(1);
        let s = fourier_sum(Splitting::Minus2, Level::ZERO, 0, Parity::Even, &int(1), 0, &k, &b).unwrap();
        let z1 = instanton_series(Level::ZERO, &EpsilonPair::new(g.q1().pow(2), g.q2() / g.q1()).unwrap(), g.u(), &k, &b).unwrap();
        let z2 = instanton_series(Level::ZERO, &EpsilonPair::new(g.q1() / g.q2(), g.q2().pow(2)).unwrap(), g.u(), &k, &b).unwrap();
        assert_eq!(s, z1.mul(&z2));
    }

    #[test]
    fn beta_identities() {
        let b = backend();
        let k = Order::integer(2);
        assert!(cs_beta_identity(&k, &b).unwrap().is_zero());
        assert!(beta20_convolution_identity(&k, &b).unwrap().is_zero());
    }

    #[test]
    fn determinant_identity() {
        let g = Grid::default();
        for (a, c) in [(1, -1), (0, 2), (-2, 0), (2, -2)] {
            for p in 0..2 {
                assert!(sufficiency_determinant(a, c, p, g).unwrap().0);
            }
        }
        assert!(sufficiency_check(1, -1, 0, &backend()).unwrap());
    }
}
