use num_traits::ToPrimitive;

use super::{instanton_series_shared, prefactor, EpsilonPair, Level, Parity, ZFactor};
use crate::algebra::{int, ratio, Backend, Field, Grid, Monomial, Order, PuiseuxSeries, Rational};
use crate::{Error, Result};

/// How the two Ω-backgrounds of a blowup term are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Splitting {
    /// `(q1, q2/q1)` and `(q1/q2, q2)`: the `-1` blowup.
    Blowup,
    /// `(q1², q2/q1)` and `(q1/q2, q2²)`: the `-2` blowup.
    Minus2,
}

/// A sign `ε = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(e: i64) -> Result<Self> {
        match e {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidArgument(format!("ε must be ±1, got {e}"))),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `ε^k` for an integer `k`.
    pub fn pow(self, k: i64) -> i64 {
        if self == Sign::Minus && k.rem_euclid(2) == 1 {
            -1
        } else {
            1
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// The unshifted arguments `(w; A, B)` that a blowup relation is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlowupBase {
    pub w: Monomial,
    pub eps: EpsilonPair,
}

impl BlowupBase {
    /// `(u; q1, q2)`.
    pub fn standard(grid: Grid) -> Self {
        BlowupBase { w: grid.u(), eps: EpsilonPair::standard(grid) }
    }
}

/// One summand of a blowup sum: lattice index `n`, z-shift `d`, level and sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShiftSpec {
    two_n: i64,
    pub d: i64,
    pub level: Level,
    pub parity: Parity,
    pub splitting: Splitting,
}

impl ShiftSpec {
    /// `n` must lie in `ℤ + j/2`.
    pub fn new(n: &Rational, d: i64, level: Level, parity: Parity, splitting: Splitting) -> Result<Self> {
        let two_n = (n * int(2)).to_integer().to_i64().filter(|_| (n * int(2)).is_integer());
        let two_n = two_n.ok_or_else(|| Error::InvalidArgument(format!("lattice index {n} is not a half-integer")))?;
        if two_n.rem_euclid(2) != parity.index() as i64 {
            return Err(Error::InvalidArgument(format!("lattice index {n} not in ℤ + {}/2", parity.index())));
        }
        Ok(ShiftSpec { two_n, d, level, parity, splitting })
    }

    pub(crate) fn from_twice(two_n: i64, d: i64, level: Level, parity: Parity, splitting: Splitting) -> Self {
        debug_assert_eq!(two_n.rem_euclid(2), parity.index() as i64);
        ShiftSpec { two_n, d, level, parity, splitting }
    }

    pub fn n(&self) -> Rational {
        ratio(self.two_n, 2)
    }

    pub fn twice_n(&self) -> i64 {
        self.two_n
    }

    /// The z-shift exponent: `d + l(j-1)/2` for the `-1` blowup, `d` for the `-2` blowup.
    pub fn z_shift(&self) -> Rational {
        match self.splitting {
            Splitting::Blowup => int(self.d) + ratio(self.level.value() * (self.parity.index() as i64 - 1), 2),
            Splitting::Minus2 => int(self.d),
        }
    }

    /// The two shifted factors, the classical reference and the one-loop reference.
    pub fn factors(&self, base: &BlowupBase, grid: Grid) -> Result<(Vec<ZFactor>, Vec<ZFactor>, Vec<ZFactor>)> {
        let (a, b, w) = (base.eps.a(), base.eps.b(), base.w);
        let s = self.z_shift();
        let k = self.two_n;
        match self.splitting {
            Splitting::Blowup => {
                let e1 = EpsilonPair::new(a, b / a)?;
                let e2 = EpsilonPair::new(a / b, b)?;
                let f = vec![ZFactor::new(w * a.pow(k), e1, a.pow_rational(&s, grid)?), ZFactor::new(w * b.pow(k), e2, b.pow_rational(&s, grid)?)];
                let r = vec![ZFactor::new(w, base.eps, Monomial::ONE)];
                Ok((f, r.clone(), r))
            }
            Splitting::Minus2 => {
                let e1 = EpsilonPair::new(a.pow(2), b / a)?;
                let e2 = EpsilonPair::new(a / b, b.pow(2))?;
                let f = vec![ZFactor::new(w * a.pow(k), e1, a.pow_rational(&s, grid)?), ZFactor::new(w * b.pow(k), e2, b.pow_rational(&s, grid)?)];
                let cl = vec![ZFactor::new(w, e1, Monomial::ONE), ZFactor::new(w, e2, Monomial::ONE)];
                // odd sector: the one-loop ratio telescopes against the n = 1/2 arguments
                let lp = match self.parity {
                    Parity::Even => cl.clone(),
                    Parity::Odd => vec![ZFactor::new(w * a, e1, Monomial::ONE), ZFactor::new(w * b, e2, Monomial::ONE)],
                };
                Ok((f, cl, lp))
            }
        }
    }
}

/// `prefactor × ∏ Z_inst(factor)` truncated at `order`, or `None` when the
/// prefactor's z-power already exceeds `order`.
pub fn product_term<B: Backend>(
    factors: &[ZFactor],
    cl_reference: &[ZFactor],
    loop_reference: &[ZFactor],
    level: Level,
    order: &Order,
    backend: &B,
) -> Result<Option<PuiseuxSeries<B::Coeff>>> {
    let grid = backend.grid();
    let trunc = order.to_grid(grid)?;
    let p = prefactor(factors, cl_reference, loop_reference, grid)?;
    if p.z_exponent > trunc {
        return Ok(None);
    }
    let rest = trunc - p.z_exponent;
    let sub = Order::new(grid.from_grid(rest))?;
    let mut acc = PuiseuxSeries::one(grid, rest);
    for f in factors {
        let z = instanton_series_shared(level, &f.eps, f.w, &sub, backend)?;
        acc = acc.mul(&z.scale_z_by(f.zscale, backend)?);
    }
    Ok(Some(acc.truncate(rest).scale(&p.value(backend)?).shift(p.z_exponent)))
}

/// The blowup summand `(l^d_n)^{-1} z^{...} Z_inst Z_inst` for one lattice index.
pub fn reduced_term<B: Backend>(spec: &ShiftSpec, base: &BlowupBase, order: &Order, backend: &B) -> Result<Option<PuiseuxSeries<B::Coeff>>> {
    let (f, cl, lp) = spec.factors(base, backend.grid())?;
    product_term(&f, &cl, &lp, spec.level, order, backend)
}

/// Smallest `s >= 0` with `s² >= x`.
fn ceil_sqrt(x: &Rational) -> i64 {
    let mut s = 0i64;
    while int(s * s) < *x {
        s += 1;
    }
    s
}

/// Largest `|n|` summed for a given order: `ceil(√K)+1` for the `-1` blowup, `ceil(√(2K))+1` for `-2`.
pub fn lattice_window(splitting: Splitting, order: &Order) -> i64 {
    match splitting {
        Splitting::Blowup => ceil_sqrt(order.value()) + 1,
        Splitting::Minus2 => ceil_sqrt(&(order.value() * int(2))) + 1,
    }
}

/// `Σ_n weight(2n) · reduced_term(n)` over the lattice window, after
/// checking that the first index outside the window contributes nothing.
#[allow(clippy::too_many_arguments)]
pub fn weighted_lattice_sum<B: Backend>(
    splitting: Splitting,
    level: Level,
    d: i64,
    parity: Parity,
    base: &BlowupBase,
    order: &Order,
    backend: &B,
    weight: impl Fn(i64) -> Rational,
) -> Result<PuiseuxSeries<B::Coeff>> {
    let grid = backend.grid();
    let trunc = order.to_grid(grid)?;
    let window = lattice_window(splitting, order);
    let j = parity.index() as i64;
    let mut sum = PuiseuxSeries::zero(grid, trunc);
    for two_n in -2 * window..=2 * window {
        if two_n.rem_euclid(2) != j {
            continue;
        }
        let w = weight(two_n);
        if w.is_zero() {
            continue;
        }
        let spec = ShiftSpec::from_twice(two_n, d, level, parity, splitting);
        if let Some(t) = reduced_term(&spec, base, order, backend)? {
            sum = sum.add(&t.scale(&B::Coeff::from_rational(w)));
        }
    }
    let edge = if j == 1 { 2 * window + 1 } else { 2 * window + 2 };
    for two_n in [edge, -edge] {
        let spec = ShiftSpec::from_twice(two_n, d, level, parity, splitting);
        let (f, cl, lp) = spec.factors(base, grid)?;
        let p = prefactor(&f, &cl, &lp, grid)?;
        if p.z_exponent <= trunc {
            return Err(Error::LatticeWindow { n: spec.n().to_string(), exponent: grid.from_grid(p.z_exponent).to_string() });
        }
    }
    Ok(sum)
}
