//! Young diagrams, arm/leg/hook lengths and the partition-pair counts that
//! index the instanton sum.
//!
//! ```text
//! cargo run --example partitions_and_hooks
//! ```

use nekrasov_blowup::partitions::{partition_pairs, partitions_of, Cell, Partition};

fn main() {
    let lambda = Partition::new([4, 2, 1]);
    println!("lambda = {lambda}, |lambda| = {}, transpose = {}", lambda.weight(), lambda.transpose());

    // Hooks inside the diagram, and arm/leg measured from a cell outside it.
    for cell in lambda.cells() {
        print!("{:>2}", lambda.hook(cell));
        if cell.col == lambda.row(cell.row) {
            println!();
        }
    }
    let outside = Cell::new(1, 6);
    println!("arm/leg at (1,6): {} / {}", lambda.arm(outside), lambda.leg(outside));
    println!("standard tableaux: {}", lambda.dimension());

    let counts: Vec<usize> = (0..=6).map(|n| partitions_of(n).len()).collect();
    let pairs: Vec<usize> = (0..=6).map(|k| partition_pairs(k).len()).collect();
    println!("p(n)        = {counts:?}");
    println!("pairs of |k| = {pairs:?}");
}
