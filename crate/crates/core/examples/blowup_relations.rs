//! Nakajima-Yoshioka blowup relations: the lattice sum over the blown-up
//! Coulomb parameter reproduces β · Z_inst.
//!
//! Prints the residual status for every (l, d, j) with a tabulated β.
//!
//! ```text
//! cargo run --release --example blowup_relations
//! ```

use nekrasov_blowup::blowup::ny_residual;
use nekrasov_blowup::prelude::*;

fn main() -> Result<()> {
    let grid = Grid::default();
    let backend = PointBackend::new(ParameterPoint::defaults()[1].clone(), grid);
    let order = Order::integer(3);

    for l in 0..=2 {
        for d in -1..=1 {
            for j in [Parity::Even, Parity::Odd] {
                let r = ny_residual(Level::new(l)?, d, j, &order, &backend)?;
                let status = match r.leading() {
                    None => "exact zero".to_string(),
                    Some((e, c)) => format!("nonzero at z^{}/{}: {c}", e, grid.denominator()),
                };
                println!("l={l} d={d:>2} j={}  {status}", j.index());
            }
        }
    }
    // d = ±2 only has a table entry in the even sector at levels 0 and 1.
    for (l, d) in [(0, 2), (0, -2), (1, 2)] {
        let r = ny_residual(Level::new(l)?, d, Parity::Even, &order, &backend)?;
        println!("l={l} d={d:>2} j=0  {}", if r.is_zero() { "exact zero" } else { "nonzero" });
    }
    Ok(())
}
