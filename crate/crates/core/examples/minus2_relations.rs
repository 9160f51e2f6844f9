//! Blowup relations on the -2 curve, each a finite linear combination of
//! lattice sums with coefficients in q1, q2, z.
//!
//! ```text
//! cargo run --release --example minus2_relations
//! ```

use nekrasov_blowup::bilinear::{relation_residual, split_half_integer, Minus2Relation};
use nekrasov_blowup::prelude::*;

fn main() -> Result<()> {
    let grid = Grid::default();
    let order = Order::integer(2);
    for point in ParameterPoint::defaults() {
        let backend = PointBackend::new(point.clone(), grid);
        println!("{point}");
        for rel in Minus2Relation::all() {
            let r = relation_residual(&rel, &order, &backend)?;
            let (int_part, half_part) = split_half_integer(&r);
            println!(
                "  {:<13} eps={}  integer part {}, half-integer part {}",
                rel.id.to_string(),
                rel.eps,
                if int_part.is_zero() { "zero" } else { "NONZERO" },
                if half_part.is_zero() { "zero" } else { "NONZERO" },
            );
        }
    }
    Ok(())
}
