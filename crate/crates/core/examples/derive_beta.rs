//! Solving a blowup relation for its coefficient β^{d,[l]}_j.
//!
//! The derived series is divided by the lattice sum's instanton part and
//! checked for u-independence, then written in q-monomials where possible.
//!
//! ```text
//! cargo run --release --example derive_beta
//! ```

use nekrasov_blowup::algebra::format_series_human;
use nekrasov_blowup::blowup::recognize_series;
use nekrasov_blowup::prelude::*;

fn main() -> Result<()> {
    let grid = Grid::default();
    let point = ParameterPoint::defaults()[0].clone();
    let backend = PointBackend::new(point.clone(), grid);
    let order = Order::integer(3);

    let tuples = [(0, 0, 2), (0, 0, -2), (0, 1, 1), (0, 1, -1), (1, 0, 2), (2, 0, 2), (2, 1, 1), (0, 1, 2)];
    for (l, j, d) in tuples {
        let level = Level::new(l)?;
        let parity = Parity::from_index(j)?;
        match derive_beta(level, parity, d, &order, &backend) {
            Ok(s) => {
                let shown = recognize_series(&s, &point).map(|r| format_series_human(&r)).unwrap_or_else(|| format_series_human(&s));
                println!("beta^({d},[{l}])_{j} = {shown}");
            }
            Err(Error::UDependentBeta { .. }) => println!("beta^({d},[{l}])_{j}: no u-independent coefficient"),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
