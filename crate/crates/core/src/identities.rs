//! Standalone identities of the instanton series and the arguments that prove them.
//!
//! * elementary symmetries in `q1 ↔ q2`, `u → 1/u` and `q → 1/q`;
//! * `Z^{[2]} = (z; q1, q2)_∞ Z^{[0]}`;
//! * the order-by-order recursion showing that three blowup relations with
//!   equal β's determine the series on the two blown-up backgrounds;
//! * the convergence estimate in the sector `q1 = q^{-m}`, `q2 = q^n`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::{int, pochhammer_z_series, ratio, Backend, Field, Grid, Monomial, Order, PointBackend, PuiseuxSeries, Rational};
use crate::blowup::beta_coeff;
use crate::nekrasov::{instanton_series, prefactor, EpsilonPair, Level, Parity, ZFactor};
use crate::partitions::partitions_of;
use crate::{Error, Result};

/// Which elementary symmetry to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryKind {
    /// `Z(u; q1, q2) = Z(u; q2, q1)`.
    SwapQ,
    /// `Z(u; q1, q2) = Z(u^{-1}; q1, q2)`.
    InvertU,
    /// `Z^{[0]}(u; q1, q2) = Z^{[0]}(u; q1^{-1}, q2^{-1})`.
    InvertQL0,
    /// `Z^{[-l]}(u; q1, q2) = Z^{[l]}(u; q1^{-1}, q2^{-1})`.
    CsNegate,
    /// `Z^{[1]}(u; q1, q2) = Z^{[1]}(u; q1^{-1}, q2^{-1})`.
    InvertQL1,
}

impl SymmetryKind {
    pub const ALL: [SymmetryKind; 5] =
        [SymmetryKind::SwapQ, SymmetryKind::InvertU, SymmetryKind::InvertQL0, SymmetryKind::CsNegate, SymmetryKind::InvertQL1];

    pub fn name(self) -> &'static str {
        match self {
            SymmetryKind::SwapQ => "swap_q",
            SymmetryKind::InvertU => "invert_u",
            SymmetryKind::InvertQL0 => "invert_q_l0",
            SymmetryKind::CsNegate => "cs_negate",
            SymmetryKind::InvertQL1 => "invert_q_l1",
        }
    }

    /// Levels the symmetry applies to.
    pub fn levels(self) -> &'static [i64] {
        match self {
            SymmetryKind::InvertQL0 => &[0],
            SymmetryKind::InvertQL1 => &[1],
            _ => &[0, 1, 2],
        }
    }
}

impl fmt::Display for SymmetryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SymmetryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SymmetryKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Parse(format!("unknown symmetry {s:?}")))
    }
}

/// Difference of the two sides of a symmetry.
pub fn check_symmetry<B: Backend>(kind: SymmetryKind, level: Level, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    if !kind.levels().contains(&level.value()) {
        return Err(Error::InvalidArgument(format!("{kind} does not apply at level {level}")));
    }
    let g = backend.grid();
    let eps = EpsilonPair::standard(g);
    let z = |l: Level, e: &EpsilonPair, w: Monomial| instanton_series(l, e, w, order, backend);
    let lhs = z(level, &eps, g.u())?;
    let rhs = match kind {
        SymmetryKind::SwapQ => z(level, &eps.swapped(), g.u())?,
        SymmetryKind::InvertU => z(level, &eps, g.u().inv())?,
        SymmetryKind::InvertQL0 | SymmetryKind::InvertQL1 => z(level, &eps.inverted(), g.u())?,
        SymmetryKind::CsNegate => return Ok(z(level.negated(), &eps, g.u())?.sub(&z(level, &eps.inverted(), g.u())?)),
    };
    Ok(lhs.sub(&rhs))
}

/// `Z^{[2]} - (z; q1, q2)_∞ Z^{[0]}`.
pub fn check_z2_z0<B: Backend>(order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    let g = backend.grid();
    let eps = EpsilonPair::standard(g);
    let z2 = instanton_series(Level::TWO, &eps, g.u(), order, backend)?;
    let z0 = instanton_series(Level::ZERO, &eps, g.u(), order, backend)?;
    let poch = pochhammer_z_series(&[g.q1(), g.q2()], order, backend)?;
    Ok(z2.sub(&poch.mul(&z0)))
}

// ---------------------------------------------------------------------------
// recursion

/// Which family of blowup relations drives the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecursionFamily {
    /// Level 2, `d = -1, 0, 1`.
    Level2,
    /// Level 1 with `d = 0, 1, 2`, equivalently level `-1` with `d = -1, 0, 1`.
    Level1,
}

impl RecursionFamily {
    /// The three effective z-shifts `d + l(j-1)/2`, the first one being the reference row.
    pub fn shifts(self) -> [Rational; 3] {
        match self {
            RecursionFamily::Level2 => [int(0), int(-1), int(-2)],
            RecursionFamily::Level1 => [ratio(-1, 2), ratio(1, 2), ratio(3, 2)],
        }
    }

    pub fn level(self) -> Level {
        match self {
            RecursionFamily::Level2 => Level::TWO,
            RecursionFamily::Level1 => Level::ONE,
        }
    }
}

/// Effective shifts of the `j = 0` relations at `level` for the given `d`s,
/// after checking that all three β's are `1`.
pub fn effective_shifts(level: Level, ds: [i64; 3]) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for d in ds {
        let beta = beta_coeff(d, Parity::Even, level)?;
        if beta.terms.len() != 1 || beta.terms[0].coeff != int(1) || !Field::is_zero(&beta.terms[0].z_power) {
            return Err(Error::InvalidArgument(format!("β^{d}_0 at level {level} is not 1")));
        }
        out.push(int(d) - ratio(level.value(), 2));
    }
    out.sort();
    Ok(out)
}

/// The level-1 and level-(-1) relation families have the same effective
/// shifts and β's, hence define the same recursion.
pub fn level_one_families_coincide() -> Result<bool> {
    let plus = effective_shifts(Level::ONE, [0, 1, 2])?;
    let minus = effective_shifts(Level::signed(-1)?, [-1, 0, 1])?;
    let mut expect = RecursionFamily::Level1.shifts().to_vec();
    expect.sort();
    Ok(plus == minus && plus == expect)
}

/// One processed order of the recursion.
#[derive(Clone, Debug)]
pub struct RecursionState<C: Field> {
    pub k: i64,
    pub c1: C,
    pub c2: C,
    pub matrix: [[C; 2]; 2],
    pub determinant: C,
    /// The closed form of the determinant as stated for the family.
    pub stated_determinant: C,
    /// Coefficients of the directly computed series.
    pub direct: (C, C),
}

impl<C: Field> RecursionState<C> {
    pub fn matches_direct(&self) -> bool {
        self.c1 == self.direct.0 && self.c2 == self.direct.1
    }

    pub fn determinant_matches(&self) -> bool {
        self.determinant == self.stated_determinant
    }
}

type Pair<C> = (PuiseuxSeries<C>, PuiseuxSeries<C>);

/// `(c1, c2, matrix, determinant)` at one order.
type Step<C> = (C, C, [[C; 2]; 2], C);

struct Recursion<'a, B: Backend> {
    backend: &'a B,
    shifts: [Rational; 3],
    e1: EpsilonPair,
    e2: EpsilonPair,
    memo: HashMap<(Monomial, i64), Pair<B::Coeff>>,
}

impl<'a, B: Backend> Recursion<'a, B> {
    fn new(backend: &'a B, shifts: [Rational; 3]) -> Result<Self> {
        let g = backend.grid();
        let (q1, q2) = (g.q1(), g.q2());
        Ok(Recursion { backend, shifts, e1: EpsilonPair::new(q1, q2 / q1)?, e2: EpsilonPair::new(q1 / q2, q2)?, memo: HashMap::new() })
    }

    fn grid(&self) -> Grid {
        self.backend.grid()
    }

    /// Coefficient of `z^k` in `Σ_n (blowup term)` at base `w`, with the
    /// `n = 0` factors taken from `zero` (whose `z^k` coefficients are unknown and left out).
    fn known_part(&mut self, w: Monomial, k: i64, shift: &Rational, zero: &Pair<B::Coeff>) -> Result<B::Coeff> {
        let g = self.grid();
        let dd = g.denominator();
        let (q1, q2) = (g.q1(), g.q2());
        let reference = [ZFactor::new(w, EpsilonPair::standard(g), Monomial::ONE)];
        let s1 = q1.pow_rational(shift, g)?;
        let s2 = q2.pow_rational(shift, g)?;
        let mut total = B::Coeff::zero();
        for n in -(k + 1)..=(k + 1) {
            let f = [ZFactor::new(w * q1.pow(2 * n), self.e1, s1), ZFactor::new(w * q2.pow(2 * n), self.e2, s2)];
            let p = prefactor(&f, &reference, &reference, g)?;
            if p.z_exponent > k * dd {
                continue;
            }
            if p.z_exponent.rem_euclid(dd) != 0 {
                return Err(Error::InvalidArgument(format!("fractional z-power {} in an integer recursion", g.from_grid(p.z_exponent))));
            }
            let rest = k - p.z_exponent / dd;
            let (a, b) = if n == 0 {
                zero.clone()
            } else {
                // only orders below k are needed off the diagonal
                let a = self.series(f[0].w, rest)?.0;
                let b = self.series(f[1].w, rest)?.1;
                (a, b)
            };
            let prod = a.scale_z_by(s1, self.backend)?.mul(&b.scale_z_by(s2, self.backend)?);
            total = total.plus(&prod.coeff_or_zero(rest * dd).times(&p.value(self.backend)?));
        }
        Ok(total)
    }

    /// Solves order `k` at base `w`, given the series through order `k-1`.
    fn step(&mut self, w: Monomial, k: i64, lower: &Pair<B::Coeff>) -> Result<Step<B::Coeff>> {
        let g = self.grid();
        let (q1, q2) = (g.q1(), g.q2());
        let backend = self.backend;
        let mono = |m: Monomial| backend.monomial(m);
        let shifts = self.shifts.clone();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let t0 = self.known_part(w, k, &shifts[0], lower)?;
        let (a0, b0) = (mono(q1.pow_rational(&(&shifts[0] * int(k)), g)?)?, mono(q2.pow_rational(&(&shifts[0] * int(k)), g)?)?);
        for s in &shifts[1..] {
            let t = self.known_part(w, k, s, lower)?;
            let a = mono(q1.pow_rational(&(s * int(k)), g)?)?;
            let b = mono(q2.pow_rational(&(s * int(k)), g)?)?;
            rows.push([a.minus(&a0), b.minus(&b0)]);
            rhs.push(t0.minus(&t));
        }
        let m = [rows[0].clone(), rows[1].clone()];
        let det = m[0][0].times(&m[1][1]).minus(&m[0][1].times(&m[1][0]));
        if det.is_zero() {
            return Err(Error::SingularMatrix(k));
        }
        let x = rhs[0].times(&m[1][1]).minus(&rhs[1].times(&m[0][1])).divided_by(&det)?;
        let y = m[0][0].times(&rhs[1]).minus(&m[1][0].times(&rhs[0])).divided_by(&det)?;
        Ok((x, y, m, det))
    }

    /// Reconstructed series on both backgrounds at base `w` through order `k`.
    fn series(&mut self, w: Monomial, k: i64) -> Result<Pair<B::Coeff>> {
        if let Some(p) = self.memo.get(&(w, k)) {
            return Ok(p.clone());
        }
        let g = self.grid();
        let dd = g.denominator();
        let out = if k == 0 {
            (PuiseuxSeries::one(g, 0), PuiseuxSeries::one(g, 0))
        } else {
            let (a, b) = self.series(w, k - 1)?;
            let lower = (widen(&a, k * dd), widen(&b, k * dd));
            let (x, y, _, _) = self.step(w, k, &lower)?;
            let (mut a, mut b) = lower;
            a.add_term(k * dd, &x);
            b.add_term(k * dd, &y);
            (a, b)
        };
        self.memo.insert((w, k), out.clone());
        Ok(out)
    }
}

/// Re-truncates a series at a higher order, treating missing coefficients as zero.
fn widen<C: Field>(s: &PuiseuxSeries<C>, trunc: i64) -> PuiseuxSeries<C> {
    PuiseuxSeries::from_coeffs(s.grid(), trunc, s.iter().map(|(e, c)| (e, c.clone())))
}

fn stated_determinant<B: Backend>(family: RecursionFamily, k: i64, backend: &B) -> Result<B::Coeff> {
    let g = backend.grid();
    let m = |x: Monomial| backend.monomial(x);
    let one = B::Coeff::one();
    let (q1k, q2k) = (m(g.q1().pow(-k))?, m(g.q2().pow(-k))?);
    let base = q1k.minus(&one).times(&q2k.minus(&one)).times(&q2k.minus(&q1k));
    Ok(match family {
        RecursionFamily::Level2 => base,
        RecursionFamily::Level1 => base.times(&m((g.q1() * g.q2()).pow_ratio(-k, 2, g)?)?),
    })
}

/// Rebuilds the series `Z^{[l]}(u; q1, q2/q1)` and `Z^{[l]}(u; q1/q2, q2)`
/// order by order from the relation family, starting from `1`, and compares
/// each order with the direct Nekrasov sums.
pub fn recursion_reconstruct<B: Backend>(family: RecursionFamily, order: i64, backend: &B) -> Result<Vec<RecursionState<B::Coeff>>> {
    let g = backend.grid();
    let dd = g.denominator();
    let mut rec = Recursion::new(backend, family.shifts())?;
    let full = Order::integer(order);
    let d1 = instanton_series(family.level(), &rec.e1, g.u(), &full, backend)?;
    let d2 = instanton_series(family.level(), &rec.e2, g.u(), &full, backend)?;
    let mut out = Vec::new();
    for k in 1..=order {
        let (a, b) = rec.series(g.u(), k - 1)?;
        let lower = (widen(&a, k * dd), widen(&b, k * dd));
        let (c1, c2, matrix, determinant) = rec.step(g.u(), k, &lower)?;
        out.push(RecursionState {
            k,
            c1,
            c2,
            matrix,
            determinant,
            stated_determinant: stated_determinant(family, k, backend)?,
            direct: (d1.coeff_or_zero(k * dd), d2.coeff_or_zero(k * dd)),
        });
    }
    Ok(out)
}

/// [`recursion_reconstruct`] for the level-2 family.
pub fn recursion_reconstruct_l2<B: Backend>(order: i64, backend: &B) -> Result<Vec<RecursionState<B::Coeff>>> {
    recursion_reconstruct(RecursionFamily::Level2, order, backend)
}

/// [`recursion_reconstruct`] for the level-1 family, after confirming that
/// the level-`±1` families coincide. The reconstructed series are compared
/// with level 1; see [`check_symmetry`] with [`SymmetryKind::CsNegate`] for level `-1`.
pub fn recursion_reconstruct_l1<B: Backend>(order: i64, backend: &B) -> Result<Vec<RecursionState<B::Coeff>>> {
    if !level_one_families_coincide()? {
        return Err(Error::InvalidArgument("level ±1 relation families differ".into()));
    }
    recursion_reconstruct(RecursionFamily::Level1, order, backend)
}

// ---------------------------------------------------------------------------
// convergence

/// Parameters of the convergence probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub m: u32,
    pub n: u32,
    #[serde(with = "crate::algebra::rational_string")]
    pub q: Rational,
    #[serde(with = "crate::algebra::rational_string")]
    pub u: Rational,
    #[serde(with = "crate::algebra::rational_string")]
    pub z0: Rational,
    pub kmax: u32,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { m: 1, n: 1, q: ratio(1, 2), u: int(3), z0: int(1), kmax: 8 }
    }
}

/// One row of the probe table.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub k: u32,
    /// `c_k` as an exact value.
    pub coefficient: String,
    /// `|c_k|` to 50 significant digits.
    pub magnitude: String,
    /// `|Σ_{i≤k} c_i z0^i|`.
    pub partial_sum: String,
    /// `(2C)^k / k!`.
    pub coefficient_bound: String,
    pub coefficient_ok: bool,
    pub partial_sum_ok: bool,
    /// Whether both fundamental-matrix determinants are nonzero at this order.
    pub determinants_nonzero: bool,
}

/// Result of the convergence probe.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub config: ProbeConfig,
    /// Empirical lower-bound constants, minimized over the indices actually used.
    pub l1: String,
    pub l2: String,
    /// `C = 1/(q^{m-n} min²(m,n) L1 L2 (q^{1/2} - q^{-1/2})^4)`; the bound is `exp(2 C |z0|)`.
    pub constant: String,
    pub bound: String,
    pub rows: Vec<ProbeRow>,
    /// `Σ_{|λ|=n} dim(λ)² = n!` for `n ≤ kmax`.
    pub dimension_identity: bool,
}

impl ProbeReport {
    pub fn ok(&self) -> bool {
        self.dimension_identity && self.rows.iter().all(|r| r.coefficient_ok && r.partial_sum_ok && r.determinants_nonzero)
    }
}

fn rpow(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `Σ_{i ≤ terms} x^i / i!`, a lower bound for `exp(x)` when `x ≥ 0`.
fn exp_lower(x: &Rational, terms: u32) -> Rational {
    let mut acc = int(0);
    let mut t = int(1);
    for i in 0..=terms {
        if i > 0 {
            t = t * x / int(i as i64);
        }
        acc += &t;
    }
    acc
}

/// `r` to `digits` significant decimal digits, in scientific notation.
pub fn decimal(r: &Rational, digits: usize) -> String {
    if Field::is_zero(r) {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // find e with 10^e <= a < 10^{e+1}
    let ten = int(10);
    let mut e: i64 = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while rpow(&ten, e) > a {
        e -= 1;
    }
    while rpow(&ten, e + 1) <= a {
        e += 1;
    }
    let scaled = &a * rpow(&ten, digits as i64 - 1 - e);
    let n: BigInt = (scaled + ratio(1, 2)).floor().to_integer();
    let mut s = n.to_string();
    if s.len() > digits {
        // rounding carried into a new digit
        s.truncate(digits);
        e += 1;
    }
    let (head, tail) = s.split_at(1);
    format!("{}{}.{}e{}", if neg { "-" } else { "" }, head, tail, e)
}

/// Checks the convergence estimate at `q1 = q^{-m}`, `q2 = q^n` for the level-0 series.
pub fn convergence_probe(config: &ProbeConfig) -> Result<ProbeReport> {
    let ProbeConfig { m, n, q, u, z0, kmax } = config.clone();
    if m == 0 || n == 0 || kmax == 0 {
        return Err(Error::InvalidArgument("m, n and kmax must be positive".into()));
    }
    if Field::is_zero(&q) || q.abs() >= int(1) || q.is_negative() {
        return Err(Error::InvalidArgument("the probe needs 0 < q < 1".into()));
    }
    let (mi, ni) = (m as i64, n as i64);
    let range = kmax as i64 * mi.max(ni);
    for k in -range..=range {
        if u == rpow(&q, k) {
            return Err(Error::InvalidPoint(format!("u = q^{k} is a pole")));
        }
    }
    let grid = Grid::default();
    let backend = PointBackend::from_values(rpow(&q, -mi), rpow(&q, ni), u.clone(), grid)?;

    // |q^{k/2} - q^{-k/2}|² = q^k + q^{-k} - 2 and similarly with u, all rational.
    let gap = |k: i64| rpow(&q, k) + rpow(&q, -k) - int(2);
    let base = gap(1);
    let l1 = (1..=range).map(|k| gap(k) / (&base * int(k * k))).min().expect("nonempty range");
    let l2 = (-range..=range).map(|k| (&u * rpow(&q, k) + (&u * rpow(&q, k)).recip() - int(2)) / &base).min().expect("nonempty range");
    let min_mn = int(mi.min(ni));
    let c = (rpow(&q, mi - ni) * &min_mn * &min_mn * &l1 * &l2 * &base * &base).recip();
    let x = int(2) * &c * z0.abs();
    let bound = exp_lower(&x, 200);

    let z = instanton_series(Level::ZERO, &EpsilonPair::standard(grid), grid.u(), &Order::integer(kmax as i64), &backend)?;
    let dd = grid.denominator();
    let two_c = int(2) * &c;
    let mut rows = Vec::new();
    let mut partial = int(0);
    for k in 0..=kmax {
        let ck = z.coeff_or_zero(k as i64 * dd);
        partial += &ck * rpow(&z0, k as i64);
        let cb = rpow(&two_c, k as i64) / Rational::from_integer(BigInt::from(factorial(k)));
        let dets = if k == 0 {
            true
        } else {
            let ki = k as i64;
            let (a, b) = (backend.value(grid.q1().pow(-ki))?, backend.value(grid.q2().pow(-ki))?);
            let one = int(1);
            let d2 = (&a - &one) * (&b - &one) * (&b - &a);
            !Field::is_zero(&d2)
        };
        rows.push(ProbeRow {
            k,
            coefficient: crate::algebra::format_rational(&ck),
            magnitude: decimal(&ck.abs(), 50),
            partial_sum: decimal(&partial.abs(), 50),
            coefficient_bound: decimal(&cb, 50),
            coefficient_ok: ck.abs() <= cb,
            partial_sum_ok: partial.abs() <= bound,
            determinants_nonzero: dets,
        });
    }
    Ok(ProbeReport {
        config: config.clone(),
        l1: crate::algebra::format_rational(&l1),
        l2: crate::algebra::format_rational(&l2),
        constant: crate::algebra::format_rational(&c),
        bound: format!("exp({}) ≥ {}", crate::algebra::format_rational(&x), decimal(&bound, 50)),
        rows,
        dimension_identity: dimension_identity(kmax),
    })
}

/// `Σ_{|λ|=n} dim(λ)² = n!` for every `n ≤ nmax`.
pub fn dimension_identity(nmax: u32) -> bool {
    (0..=nmax).all(|n| partitions_of(n).iter().map(|p| p.dimension().pow(2)).sum::<BigUint>() == factorial(n))
}
