//! Nekrasov data: combinatorial blocks, Chern-Simons terms, instanton
//! series and the classical and one-loop ratios that reduce full partition
//! function relations to relations between instanton series.

mod block;
mod instanton;
mod prefactor;
mod term;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{format_monomial, Grid, Monomial};
use crate::{Error, Result};

pub use block::{block_factors, cs_term, nekrasov_block};
pub use instanton::{instanton_series, instanton_series_shared};
pub use prefactor::{classical_prefactor, one_loop_factor, prefactor, Prefactor, ZFactor};
pub use term::{lattice_window, product_term, reduced_term, weighted_lattice_sum, BlowupBase, ShiftSpec, Sign, Splitting};

/// The Ω-background pair `(q1, q2)` of one Nekrasov factor, as monomials
/// in the root variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsilonPair {
    a: Monomial,
    b: Monomial,
}

impl EpsilonPair {
    pub fn new(a: Monomial, b: Monomial) -> Result<Self> {
        if a.is_one() || b.is_one() {
            return Err(Error::InvalidArgument("Ω-background parameters must differ from 1".into()));
        }
        if a.u_exponent() != 0 || b.u_exponent() != 0 {
            return Err(Error::InvalidArgument("Ω-background parameters must not involve u".into()));
        }
        Ok(EpsilonPair { a, b })
    }

    /// `(q1, q2)`.
    pub fn standard(grid: Grid) -> Self {
        EpsilonPair { a: grid.q1(), b: grid.q2() }
    }

    pub fn a(&self) -> Monomial {
        self.a
    }

    pub fn b(&self) -> Monomial {
        self.b
    }

    pub fn product(&self) -> Monomial {
        self.a * self.b
    }

    pub fn swapped(&self) -> Self {
        EpsilonPair { a: self.b, b: self.a }
    }

    pub fn inverted(&self) -> Self {
        EpsilonPair { a: self.a.inv(), b: self.b.inv() }
    }

    pub fn describe(&self, grid: Grid) -> String {
        format!("{}, {}", format_monomial(self.a, grid), format_monomial(self.b, grid))
    }
}

/// Chern-Simons level.
///
/// Public entry points accept `0`, `1` and `2`; negative levels exist for
/// the level-inversion symmetry checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Level(i64);

impl Level {
    pub const ZERO: Level = Level(0);
    pub const ONE: Level = Level(1);
    pub const TWO: Level = Level(2);

    pub fn new(l: i64) -> Result<Self> {
        if !(0..=2).contains(&l) {
            return Err(Error::InvalidArgument(format!("level {l} outside 0..=2")));
        }
        Ok(Level(l))
    }

    /// Any level in `-2..=2`; only meant for symmetry checks between `l` and `-l`.
    pub fn signed(l: i64) -> Result<Self> {
        if !(-2..=2).contains(&l) {
            return Err(Error::InvalidArgument(format!("level {l} outside -2..=2")));
        }
        Ok(Level(l))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn negated(self) -> Self {
        Level(-self.0)
    }
}

impl TryFrom<i64> for Level {
    type Error = Error;
    fn try_from(l: i64) -> Result<Self> {
        Level::signed(l)
    }
}

impl From<Level> for i64 {
    fn from(l: Level) -> i64 {
        l.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sector `j`: the lattice index runs over `ℤ + j/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_index(j: u8) -> Result<Self> {
        match j {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::InvalidArgument(format!("parity must be 0 or 1, got {j}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl TryFrom<u8> for Parity {
    type Error = Error;
    fn try_from(j: u8) -> Result<Self> {
        Parity::from_index(j)
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        p.index()
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}
