//! The instanton series Z^{[l]}(u; q1, q2 | z) on both backends.
//!
//! The point backend substitutes exact rationals for q1^(1/16), q2^(1/16)
//! and u^(1/16); the symbolic backend keeps each coefficient as a rational
//! function in those roots.
//!
//! ```text
//! cargo run --example instanton_series
//! ```

use nekrasov_blowup::algebra::{format_series_human, serialize_series};
use nekrasov_blowup::prelude::*;

fn main() -> Result<()> {
    let grid = Grid::default();
    let eps = EpsilonPair::standard(grid);
    let point = ParameterPoint::defaults()[0].clone();
    let backend = PointBackend::new(point.clone(), grid);

    for l in [0, 1, 2] {
        let z = instanton_series(Level::new(l)?, &eps, grid.u(), &Order::integer(3), &backend)?;
        println!("Z^[{l}] at {point}:");
        for (e, c) in z.iter() {
            println!("  z^{:<3} {}", e / grid.denominator(), c);
        }
    }

    // The canonical text form is what the disk cache stores.
    let z = instanton_series(Level::ZERO, &eps, grid.u(), &Order::integer(1), &backend)?;
    println!("\n{}", serialize_series(&z)?);

    let symbolic = SymbolicBackend::new(grid);
    let z = instanton_series(Level::ZERO, &eps, grid.u(), &Order::integer(1), &symbolic)?;
    println!("symbolic: {}", format_series_human(&z));
    Ok(())
}
