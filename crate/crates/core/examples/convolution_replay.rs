//! Replays the convolution argument behind the -2 relations: the triple
//! lattice sum, its collapse into a product of two β's, and the listed
//! closed-form coefficients.
//!
//! ```text
//! cargo run --release --example convolution_replay
//! ```

use nekrasov_blowup::bilinear::{beta20_convolution_identity, convolution_replay, listed_cases};
use nekrasov_blowup::nekrasov::Sign;
use nekrasov_blowup::prelude::*;

fn main() -> Result<()> {
    let grid = Grid::default();
    let backend = PointBackend::new(ParameterPoint::defaults()[2].clone(), grid);
    let order = Order::integer(2);

    for j in [Parity::Even, Parity::Odd] {
        for (d1, d2) in listed_cases(j) {
            for eps in [Sign::Plus, Sign::Minus] {
                let c = convolution_replay(d1, d2, j, eps, &order, &backend)?;
                let listed = match c.listed_residual() {
                    Some(r) if r.is_zero() => "matches",
                    Some(_) => "DIFFERS",
                    None => "-",
                };
                println!(
                    "j={} d1={d1:>2} d2={d2:>2} eps={eps}: direct vs collapsed {}, listed {listed}",
                    j.index(),
                    if c.residual().is_zero() { "agree" } else { "DISAGREE" },
                );
            }
        }
    }
    let b = beta20_convolution_identity(&order, &backend)?;
    println!("beta^(2,[0])_0 convolution identity: {}", if b.is_zero() { "holds" } else { "fails" });
    Ok(())
}
