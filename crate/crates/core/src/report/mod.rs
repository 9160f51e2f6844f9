//! Structured reports, the verification suite and the command-line front end.

mod checks;
mod cli;
mod suite;

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    format_monomial, format_rational, format_series_human, int, Backend, BackendKind, Field, Grid, Order, ParameterPoint, PointBackend,
    PuiseuxSeries, Rational, RationalFunction, SymbolicBackend,
};
use crate::blowup::{describe_exponent, recognize_monomial, recognize_series};

pub use checks::{run_check, Check, IdentityCheck};
pub use cli::run_cli;
pub use suite::{default_checks, run_checks, run_suite, strip_timing};

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ExactZero,
    Nonzero,
    /// No tabulated β exists for the tuple; the report carries what was derived.
    NoBeta,
    BoundSatisfied,
    BoundViolated,
    Error,
}

impl Status {
    pub fn is_ok(self) -> bool {
        matches!(self, Status::ExactZero | Status::NoBeta | Status::BoundSatisfied)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::ExactZero => "exact_zero",
            Status::Nonzero => "nonzero",
            Status::NoBeta => "no_beta",
            Status::BoundSatisfied => "bound_satisfied",
            Status::BoundViolated => "bound_violated",
            Status::Error => "error",
        }
    }
}

/// The lowest nonvanishing term of a residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstNonzero {
    /// Exponent of `z`, e.g. `1/2`.
    pub exponent: String,
    pub coefficient: String,
}

/// One line of output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    pub params: BTreeMap<String, String>,
    pub order: String,
    pub backend: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_nonzero: Option<FirstNonzero>,
    pub seconds: f64,
    pub cache_hits: u64,
}

impl RelationReport {
    pub fn human(&self) -> String {
        let params = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
        let mut line = format!("{:<15} {} {} [order {}, {}]", self.status.as_str(), self.relation, params, self.order, self.backend);
        if let Some(f) = &self.first_nonzero {
            line.push_str(&format!(" first nonzero at z^{}: {}", f.exponent, f.coefficient));
        }
        line.push_str(&format!(" ({:.2}s, {} cache hits)", self.seconds, self.cache_hits));
        line
    }
}

/// Output format of the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
}

/// Everything a run needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub order: Order,
    pub backend: BackendKind,
    pub points: Vec<ParameterPoint>,
    pub grid: Grid,
    pub cache_dir: Option<PathBuf>,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: Order::integer(3),
            backend: BackendKind::Point,
            points: ParameterPoint::defaults(),
            grid: Grid::default(),
            cache_dir: None,
            output: OutputFormat::Human,
        }
    }
}

/// Backends that can render their coefficients for reports.
pub trait Describe: Backend {
    fn describe_coeff(&self, c: &Self::Coeff) -> String;

    /// A readable series, in `q1, q2` monomials when that is possible.
    fn describe_series(&self, s: &PuiseuxSeries<Self::Coeff>) -> String;
}

impl Describe for PointBackend {
    fn describe_coeff(&self, c: &Rational) -> String {
        let raw = format_rational(c);
        match self.point().and_then(|p| recognize_monomial(c, p)) {
            Some((sign, m)) if !m.is_one() => {
                let sign = if sign < int(0) { "-" } else { "" };
                format!("{raw} = {sign}{}", format_monomial(m, self.grid()))
            }
            _ => raw,
        }
    }

    fn describe_series(&self, s: &PuiseuxSeries<Rational>) -> String {
        match self.point().and_then(|p| recognize_series(s, p)) {
            Some(r) => format_series_human(&r),
            None => format_series_human(s),
        }
    }
}

impl Describe for SymbolicBackend {
    fn describe_coeff(&self, c: &RationalFunction) -> String {
        let mut c = c.clone();
        c.reduce_full();
        c.to_string()
    }

    fn describe_series(&self, s: &PuiseuxSeries<RationalFunction>) -> String {
        format_series_human(s)
    }
}

/// Status and first offending term of a residual.
pub fn residual_status<B: Describe>(s: &PuiseuxSeries<B::Coeff>, backend: &B) -> (Status, Option<FirstNonzero>) {
    match s.iter().find(|(_, c)| !Field::is_zero(*c)) {
        None => (Status::ExactZero, None),
        Some((e, c)) => {
            (Status::Nonzero, Some(FirstNonzero { exponent: describe_exponent(e, s.grid().denominator()), coefficient: backend.describe_coeff(c) }))
        }
    }
}
