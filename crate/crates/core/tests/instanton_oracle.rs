//! The instanton series against a direct transcription of the Nekrasov
//! sum in plain rationals, with its own partitions and arm/leg lengths.

use nekrasov_blowup::algebra::{Grid, Order, ParameterPoint, PointBackend, Rational};
use nekrasov_blowup::nekrasov::{instanton_series, EpsilonPair, Level};
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Row `i` (0-based) length, zero past the end.
fn row(p: &[u32], i: usize) -> i64 {
    p.get(i).copied().unwrap_or(0) as i64
}

fn col(p: &[u32], j: usize) -> i64 {
    p.iter().filter(|&&r| r as usize > j).count() as i64
}

fn boxes(p: &[u32]) -> Vec<(usize, usize)> {
    p.iter().enumerate().flat_map(|(i, &r)| (0..r as usize).map(move |j| (i, j))).collect()
}

fn pw(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        Pow::pow(x.clone(), k as u32)
    } else {
        Pow::pow(x.recip(), (-k) as u32)
    }
}

/// `N_{λ,μ}(w; q1, q2)` from its defining product.
fn block(l: &[u32], m: &[u32], w: &Rational, q1: &Rational, q2: &Rational) -> Rational {
    let mut acc = Rational::one();
    for (i, j) in boxes(l) {
        let (arm_m, leg_l) = (row(m, i) - j as i64 - 1, col(l, j) - i as i64 - 1);
        acc *= Rational::one() - w * pw(q2, -arm_m - 1) * pw(q1, leg_l);
    }
    for (i, j) in boxes(m) {
        let (arm_l, leg_m) = (row(l, i) - j as i64 - 1, col(m, j) - i as i64 - 1);
        acc *= Rational::one() - w * pw(q2, arm_l) * pw(q1, -leg_m - 1);
    }
    acc
}

fn cs(p: &[u32], w: &Rational, q1: &Rational, q2: &Rational) -> Rational {
    boxes(p).into_iter().map(|(i, j)| w.recip() * pw(q1, -(i as i64)) * pw(q2, -(j as i64))).product()
}

/// Coefficient of `z^k`, with `U` the 16th root of `u` so that `u^{1/2} = U^8`
/// and `(q1 q2)^{1/2} = (Q1 Q2)^8`.
fn oracle(k: u32, l: i64, roots: [&Rational; 3]) -> Rational {
    let [r1, r2, ru] = roots;
    let (q1, q2) = (pw(r1, 16), pw(r2, 16));
    let us = [pw(ru, 8), pw(ru, -8)];
    let sqrt_q = pw(&(r1 * r2), 8);
    let mut total = Rational::zero();
    for k1 in 0..=k {
        for a in partitions(k1, k1) {
            for b in partitions(k - k1, k - k1) {
                let pair = [&a, &b];
                let mut num = pw(&(&q1 * &q2), -(k as i64));
                for i in 0..2 {
                    let size: i64 = pair[i].iter().map(|&r| r as i64).sum();
                    num *= pw(&sqrt_q, -l * size) * pw(&cs(pair[i], &us[i], &q1, &q2), l);
                }
                let mut den = Rational::one();
                for i in 0..2 {
                    for j in 0..2 {
                        den *= block(pair[i], pair[j], &(&us[i] / &us[j]), &q1, &q2);
                    }
                }
                total += num / den;
            }
        }
    }
    total
}

#[test]
fn coefficients_match_the_defining_sum() {
    let grid = Grid::default();
    let eps = EpsilonPair::standard(grid);
    for point in ParameterPoint::defaults().into_iter().take(2) {
        let backend = PointBackend::new(point.clone(), grid);
        let roots = [point.q1_root(), point.q2_root(), point.u_root()];
        for l in [0, 1, 2] {
            let z = instanton_series(Level::new(l).unwrap(), &eps, grid.u(), &Order::integer(3), &backend).unwrap();
            for k in 0..=3u32 {
                let got = z.coeff(k as i64 * 16).cloned().unwrap_or_else(Rational::zero);
                assert_eq!(got, oracle(k, l, roots), "l={l} k={k} at {point}");
            }
        }
    }
}

#[test]
fn partition_counts_match_the_pentagonal_recurrence() {
    // p(n) = sum_k (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]
    let mut p = vec![BigInt::one()];
    for n in 1..=20i64 {
        let mut s = BigInt::zero();
        for k in 1..=n {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
                if g <= n {
                    s += sign * p[(n - g) as usize].clone();
                }
            }
        }
        p.push(s);
    }
    for n in 0..=20u32 {
        assert_eq!(BigInt::from(nekrasov_blowup::partitions::partitions_of(n).len()), p[n as usize], "n={n}");
        assert_eq!(partitions(n, n).len(), nekrasov_blowup::partitions::partitions_of(n).len());
    }
}

#[test]
fn one_instanton_by_hand() {
    // Two pairs contribute at z^1, (□,∅) and (∅,□); each has one self block
    // (1-q1^{-1})(1-q2^{-1}) and two mixed one-box blocks.
    let grid = Grid::default();
    let point = ParameterPoint::defaults()[2].clone();
    let backend = PointBackend::new(point.clone(), grid);
    let z = instanton_series(Level::ZERO, &EpsilonPair::standard(grid), grid.u(), &Order::integer(1), &backend).unwrap();
    let (q1, q2, u) = (pw(point.q1_root(), 16), pw(point.q2_root(), 16), pw(point.u_root(), 16));
    let one = Rational::one();
    let term = |w: &Rational| {
        // N_{□,□}(1) N_{□,∅}(w) N_{∅,□}(1/w)
        let n_bb = (&one - q2.recip()) * (&one - q1.recip());
        let n_be = &one - w;
        let n_eb = &one - w.recip() * q2.recip() * q1.recip();
        (&q1 * &q2).recip() / (n_bb * n_be * n_eb)
    };
    let expected = term(&u) + term(&u.recip());
    assert_eq!(z.coeff(16).cloned().unwrap(), expected);
}
