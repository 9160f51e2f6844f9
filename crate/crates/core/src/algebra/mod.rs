//! Exact coefficient arithmetic.
//!
//! Root variables `Q1 = q1^(1/D)`, `Q2 = q2^(1/D)`, `U = u^(1/D)` carry every
//! fractional power as an integer exponent. Series in `z` are stored with
//! exponents in units of `1/D` as well.

mod backend;
mod cache;
mod field;
mod gcd;
mod grid;
mod monomial;
mod pochhammer;
mod point;
mod poly;
mod ratfunc;
mod series;
mod text;

pub use backend::{Backend, BackendKind, PointBackend, SymbolicBackend};
pub use cache::{CacheStats, DiskCache, SeriesCache, CACHE_DIR_ENV};
pub use field::{CanonicalTerms, Field, Rational};
pub use gcd::gcd;
pub(crate) use grid::rational_string;
pub use grid::{Grid, Order};
pub use monomial::Monomial;
pub use pochhammer::{pochhammer_shift_ratio, pochhammer_z_series};
pub use point::ParameterPoint;
pub use poly::{LaurentPoly, Poly};
pub use ratfunc::RationalFunction;
pub use series::PuiseuxSeries;
pub use text::{format_monomial, format_rational, format_series_human, parse_rational, parse_series, serialize_series};

/// `num/den` as an exact rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// An integer as an exact rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
