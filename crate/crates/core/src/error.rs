use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("exponent {value} is not on the 1/{grid} grid; use a larger grid denominator")]
    OffGrid { value: String, grid: i64 },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("invalid parameter point: {0}")]
    InvalidPoint(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported beta coefficient (d={d}, j={j}, l={l})")]
    UnsupportedBeta { d: i64, j: u8, l: i64 },

    #[error("quadratic log u terms do not cancel: {0}")]
    QuadraticLogU(String),

    #[error("one-loop ratio does not telescope to a finite product: {0}")]
    Telescoping(String),

    #[error("no consistent beta exists for these (l,j,d) = ({l},{j},{d}): the ratio depends on u")]
    UDependentBeta { l: i64, j: u8, d: i64 },

    #[error("singular fundamental matrix at order {0}")]
    SingularMatrix(i64),

    #[error("lattice window too small: term n={n} enters at z^{exponent}")]
    LatticeWindow { n: String, exponent: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
