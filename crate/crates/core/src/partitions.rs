//! Young-diagram combinatorics.
//!
//! Cells use matrix coordinates: row `i` is the `i`-th part, both 1-based.
//! Arm and leg lengths are defined for any cell, including cells outside the
//! diagram, where they come out negative.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

/// An integer partition stored as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A box `(row, col)` of a diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        assert!(row >= 1 && col >= 1, "cells are 1-based");
        Cell { row, col }
    }

    pub fn transposed(self) -> Self {
        Cell { row: self.col, col: self.row }
    }
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts in any order; zeros are dropped.
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i` (1-based), zero past the last part.
    pub fn row(&self, i: u32) -> u32 {
        self.parts.get(i as usize - 1).copied().unwrap_or(0)
    }

    /// Length of column `j` (1-based).
    pub fn column(&self, j: u32) -> u32 {
        self.parts.iter().take_while(|&&p| p >= j).count() as u32
    }

    pub fn transpose(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (1..=width).map(|j| self.column(j)).collect() }
    }

    pub fn contains(&self, s: Cell) -> bool {
        s.col <= self.row(s.row)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &len)| (1..=len).map(move |j| Cell { row: i as u32 + 1, col: j }))
    }

    /// `λ_i - j` for the cell `(i, j)`.
    pub fn arm(&self, s: Cell) -> i64 {
        self.row(s.row) as i64 - s.col as i64
    }

    /// `λ'_j - i` for the cell `(i, j)`.
    pub fn leg(&self, s: Cell) -> i64 {
        self.column(s.col) as i64 - s.row as i64
    }

    pub fn hook(&self, s: Cell) -> i64 {
        self.arm(s) + self.leg(s) + 1
    }

    /// Number of standard Young tableaux, `|λ|! / ∏ hooks`.
    pub fn dimension(&self) -> BigUint {
        let mut num = BigUint::one();
        for k in 2..=self.weight() {
            num *= k;
        }
        let mut den = BigUint::one();
        for s in self.cells() {
            den *= self.hook(s) as u64;
        }
        num / den
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of every `k <= kmax`, keyed by `k`.
pub fn partitions_up_to(kmax: u32) -> BTreeMap<u32, Vec<Partition>> {
    (0..=kmax).map(|k| (k, partitions_of(k))).collect()
}

/// Pairs `(λ1, λ2)` with `|λ1| + |λ2| = k`, ordered by `|λ1|` then by each list's order.
pub fn partition_pairs(k: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for k1 in 0..=k {
        let left = partitions_of(k1);
        let right = partitions_of(k - k1);
        for a in &left {
            for b in &right {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.iter().copied())
    }

    #[test]
    fn enumeration_small_cases() {
        let all = partitions_up_to(4);
        assert_eq!(all[&0], vec![Partition::empty()]);
        let four: Vec<String> = all[&4].iter().map(|x| x.to_string()).collect();
        assert_eq!(four, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(partitions_of(8).len(), 22);
    }

    #[test]
    fn arm_and_leg_examples() {
        let c11 = Cell::new(1, 1);
        assert_eq!(p(&[3, 1]).arm(c11), 2);
        assert_eq!(Partition::empty().arm(c11), -1);
        assert_eq!(p(&[2, 2]).arm(Cell::new(3, 1)), -1);
        assert_eq!(p(&[3, 1]).leg(c11), 1);
        assert_eq!(Partition::empty().leg(c11), -1);
        assert_eq!(p(&[1]).leg(Cell::new(1, 2)), -1);
    }

    #[test]
    fn dimensions() {
        assert_eq!(Partition::empty().dimension(), BigUint::one());
        assert_eq!(p(&[2, 1]).dimension(), BigUint::from(2u32));
        assert_eq!(p(&[3, 2]).dimension(), BigUint::from(5u32));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn pairs_count() {
        // Σ_k1 p(k1) p(2-k1) = 2 + 1 + 2
        assert_eq!(partition_pairs(2).len(), 5);
    }
}
