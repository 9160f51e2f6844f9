//! The same check on both coefficient backends. The symbolic run is a
//! proof for all parameter values up to the truncation order; the point
//! runs are much faster.
//!
//! ```text
//! cargo run --release --example symbolic_backend
//! ```

use std::time::Instant;

use nekrasov_blowup::algebra::format_series_human;
use nekrasov_blowup::prelude::*;

fn main() -> Result<()> {
    let grid = Grid::default();
    let order = Order::integer(1);

    let t = Instant::now();
    let symbolic = SymbolicBackend::new(grid);
    let r = ny_residual(Level::ZERO, 0, Parity::Even, &order, &symbolic)?;
    println!("symbolic NY(l=0,d=0,j=0) residual zero: {} ({:.2?})", r.is_zero(), t.elapsed());

    let beta = derive_beta(Level::ZERO, Parity::Even, 2, &order, &symbolic)?;
    println!("symbolic beta^(2,[0])_0 = {}", format_series_human(&beta));

    for p in ParameterPoint::defaults() {
        let t = Instant::now();
        let r = ny_residual(Level::ZERO, 0, Parity::Even, &Order::integer(3), &PointBackend::new(p.clone(), grid))?;
        println!("point {p}: zero to z^3: {} ({:.2?})", r.is_zero(), t.elapsed());
    }
    Ok(())
}
