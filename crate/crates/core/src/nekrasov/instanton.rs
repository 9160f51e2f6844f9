use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{block_factors, cs_term, EpsilonPair, Level};
use crate::algebra::{Backend, Monomial, Order, PuiseuxSeries, Rational};
use crate::partitions::{partition_pairs, Partition};
use crate::{Error, Result};

/// `Z_inst^{[l]}(w; q1, q2 | z)` truncated at `order`, memoized in the backend's cache.
pub fn instanton_series<B: Backend>(level: Level, eps: &EpsilonPair, w: Monomial, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    Ok((*instanton_series_shared(level, eps, w, order, backend)?).clone())
}

/// Like [`instanton_series`] but hands out the cached value without copying.
pub fn instanton_series_shared<B: Backend>(
    level: Level,
    eps: &EpsilonPair,
    w: Monomial,
    order: &Order,
    backend: &B,
) -> Result<Arc<PuiseuxSeries<B::Coeff>>> {
    let key = format!("inst|l={}|eps={:?},{:?}|w={:?}|K={}|{}", level, eps.a().0, eps.b().0, w.0, order, backend.label());
    backend.cache().get_or_compute(&key, || compute(level, eps, w, order, backend))
}

fn compute<B: Backend>(level: Level, eps: &EpsilonPair, w: Monomial, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    let grid = backend.grid();
    let trunc = order.to_grid(grid)?;
    let kmax = order.floor().max(0) as u32;
    let u1 = w.pow_ratio(1, 2, grid)?;
    let u2 = u1.inv();
    let ab = eps.product();
    let l = level.value();

    let jobs: Vec<(u32, Partition, Partition)> = (1..=kmax).flat_map(|k| partition_pairs(k).into_iter().map(move |(a, b)| (k, a, b))).collect();
    let terms: Vec<(u32, B::Coeff)> = jobs
        .par_iter()
        .map(|(k, l1, l2)| {
            let pair = [l1, l2];
            let us = [u1, u2];
            let mut num = ab.pow(-(*k as i64));
            for i in 0..2 {
                let size = pair[i].weight() as i64;
                // (q1 q2)^{-l|λ|/2} T_λ(u_i)^l
                num = num * ab.pow_ratio(-l * size, 2, grid)? * cs_term(pair[i], us[i], eps).pow(l);
            }
            let mut den: BTreeMap<Monomial, i64> = BTreeMap::new();
            for i in 0..2 {
                for j in 0..2 {
                    for m in block_factors(pair[i], pair[j], us[i] / us[j], eps) {
                        *den.entry(m).or_insert(0) -= 1;
                    }
                }
            }
            let factors: Vec<(Monomial, i64)> = den.into_iter().collect();
            let c = backend.factored(&Rational::from_integer(1.into()), num, &factors).map_err(|e| match e {
                Error::DivisionByZero(msg) => Error::DivisionByZero(format!("pair ({l1}, {l2}): {msg}")),
                other => other,
            })?;
            Ok((*k, c))
        })
        .collect::<Result<_>>()?;

    let d = grid.denominator();
    let mut s = PuiseuxSeries::one(grid, trunc);
    for (k, c) in terms {
        s.add_term(k as i64 * d, &c);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Grid, ParameterPoint, PointBackend};

    #[test]
    fn leading_coefficient_is_one() {
        let g = Grid::default();
        let b = PointBackend::new(ParameterPoint::defaults()[0].clone(), g);
        for l in 0..=2 {
            let z = instanton_series(Level::new(l).unwrap(), &EpsilonPair::standard(g), g.u(), &Order::integer(2), &b).unwrap();
            assert!(z.coeff(0).unwrap().is_one());
            assert_eq!(z.trunc(), 32);
        }
    }

    #[test]
    fn memoized() {
        let g = Grid::default();
        let b = PointBackend::new(ParameterPoint::defaults()[1].clone(), g);
        let eps = EpsilonPair::standard(g);
        instanton_series(Level::ZERO, &eps, g.u(), &Order::integer(2), &b).unwrap();
        instanton_series(Level::ZERO, &eps, g.u(), &Order::integer(2), &b).unwrap();
        assert_eq!(b.cache().stats().memory_hits, 1);
    }
}
