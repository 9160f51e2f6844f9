//! Exact-rational convergence probe: coefficient bounds |c_k| <= (2C)^k/k!
//! and the partial sums against exp(2C|z0|), at q1 = q^-m, q2 = q^n.
//!
//! ```text
//! cargo run --example convergence_probe -- 8
//! ```

use nekrasov_blowup::algebra::ratio;
use nekrasov_blowup::identities::{convergence_probe, ProbeConfig};

fn main() -> nekrasov_blowup::Result<()> {
    let kmax = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let cfg = ProbeConfig { q: ratio(1, 2), kmax, ..ProbeConfig::default() };
    let report = convergence_probe(&cfg)?;
    println!("L1 = {}  L2 = {}  C = {}", report.l1, report.l2, report.constant);
    println!("bound: {}", report.bound);
    for row in &report.rows {
        println!("k={}\n  |c_k|     {}\n  (2C)^k/k! {}\n  S_k       {}", row.k, row.magnitude, row.coefficient_bound, row.partial_sum);
    }
    println!("{}", if report.ok() { "bounds satisfied" } else { "BOUND VIOLATED" });
    Ok(())
}
