//! Level-one (Chern-Simons) relations: the modified convolution, its
//! β-identity, and the symmetries relating Z^[l] to Z^[-l].
//!
//! ```text
//! cargo run --release --example chern_simons_identities
//! ```

use nekrasov_blowup::bilinear::{cs_beta_identity, cs_convolution_replay};
use nekrasov_blowup::identities::{check_symmetry, check_z2_z0, SymmetryKind};
use nekrasov_blowup::prelude::*;

fn main() -> Result<()> {
    let grid = Grid::default();
    let backend = PointBackend::new(ParameterPoint::defaults()[0].clone(), grid);
    let order = Order::integer(2);

    let replay = cs_convolution_replay(&order, &backend)?;
    for (d, r) in replay.term_residuals() {
        println!("shift class d={d}: {}", if r.is_zero() { "reproduced" } else { "MISMATCH" });
    }
    println!("total: {}", if replay.residual().is_zero() { "zero" } else { "nonzero" });
    println!("beta identity: {}", if cs_beta_identity(&order, &backend)?.is_zero() { "holds" } else { "fails" });

    for kind in SymmetryKind::ALL {
        for &l in kind.levels() {
            let r = check_symmetry(kind, Level::new(l)?, &order, &backend)?;
            println!("{kind:<12} l={l}: {}", if r.is_zero() { "holds" } else { "fails" });
        }
    }
    println!("Z^[2] = Z^[0]: {}", if check_z2_z0(&order, &backend)?.is_zero() { "holds" } else { "fails" });
    Ok(())
}
