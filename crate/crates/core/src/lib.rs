//! Exact-arithmetic verification of blowup, bilinear and symmetry identities
//! for 5d SU(2) Nekrasov partition functions.
//!
//! Everything is computed with arbitrary-precision rationals. Fractional
//! powers of `q1`, `q2`, `u` and `z` live on a fixed exponent grid of
//! denominator `D` (16 by default), so `q1^(1/4)` is the integer monomial
//! `Q1^4` in the root variable `Q1 = q1^(1/16)`.
//!
//! Two coefficient backends are available:
//! [`PointBackend`](algebra::PointBackend) substitutes exact rational values
//! for the root variables, and [`SymbolicBackend`](algebra::SymbolicBackend)
//! keeps coefficients as rational functions.
//!
//! ```
//! use nekrasov_blowup::prelude::*;
//!
//! let backend = PointBackend::new(ParameterPoint::defaults()[0].clone(), Grid::default());
//! let eps = EpsilonPair::standard(Grid::default());
//! let z = instanton_series(Level::ZERO, &eps, Grid::default().u(), &Order::integer(1), &backend).unwrap();
//! assert!(z.coeff(0).unwrap().is_one());
//! ```

pub mod algebra;
pub mod bilinear;
pub mod blowup;
pub mod identities;
pub mod nekrasov;
pub mod partitions;
pub mod report;

mod error;

pub use error::{Error, Result};

/// Commonly used items.
pub mod prelude {
    pub use crate::algebra::{
        Backend, Field, Grid, LaurentPoly, Monomial, Order, ParameterPoint, PointBackend, PuiseuxSeries, Rational, RationalFunction, SymbolicBackend,
    };
    pub use crate::blowup::{beta_coeff, derive_beta, ny_residual, BetaCoefficient};
    pub use crate::nekrasov::{instanton_series, EpsilonPair, Level, Parity};
    pub use crate::partitions::Partition;
    pub use crate::{Error, Result};
}
