use super::{Backend, Field, Monomial, Order, PuiseuxSeries};
use crate::{Error, Result};

/// `(z; q_1, ..., q_N)_∞ = ∏ (1 - z q_1^{i_1} ... q_N^{i_N})` expanded in `z`.
///
/// Computed as `exp(-Σ_k z^k / (k ∏_i (1 - q_i^k)))`. With no `q`s this is `1 - z`.
pub fn pochhammer_z_series<B: Backend>(qmonos: &[Monomial], order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    if let Some(i) = qmonos.iter().position(Monomial::is_one) {
        return Err(Error::InvalidArgument(format!("q-Pochhammer base {i} equals 1, so 1 - q^k vanishes")));
    }
    let grid = backend.grid();
    let d = grid.denominator();
    let trunc = order.to_grid(grid)?;
    let n_max = order.floor();
    // log coefficients scaled by k: k L_k = -1 / ∏ (1 - q_i^k)
    let mut kl = vec![B::Coeff::zero()];
    for k in 1..=n_max {
        let factors: Vec<(Monomial, i64)> = qmonos.iter().map(|q| (q.pow(k), -1)).collect();
        kl.push(backend.factored(&super::int(-1), Monomial::ONE, &factors)?);
    }
    let mut e = vec![B::Coeff::one()];
    for n in 1..=n_max {
        let mut acc = B::Coeff::zero();
        for k in 1..=n {
            acc = acc.plus(&kl[k as usize].times(&e[(n - k) as usize]));
        }
        e.push(acc.scaled(&super::ratio(1, n)));
    }
    Ok(PuiseuxSeries::from_coeffs(grid, trunc, e.into_iter().enumerate().map(|(n, c)| (n as i64 * d, c))))
}

/// `(z; q_1..q_N)_∞ / (z q_i^steps; q_1..q_N)_∞`, a finite product of
/// Pochhammer symbols without `q_i`.
pub fn pochhammer_shift_ratio<B: Backend>(qmonos: &[Monomial], i: usize, steps: i64, order: &Order, backend: &B) -> Result<PuiseuxSeries<B::Coeff>> {
    let qi = *qmonos.get(i).ok_or_else(|| Error::InvalidArgument(format!("index {i} out of range")))?;
    let others: Vec<Monomial> = qmonos.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, q)| *q).collect();
    let base = pochhammer_z_series(&others, order, backend)?;
    let grid = backend.grid();
    let mut acc = PuiseuxSeries::one(grid, order.to_grid(grid)?);
    if steps >= 0 {
        for t in 0..steps {
            acc = acc.mul(&base.scale_z_by(qi.pow(t), backend)?);
        }
    } else {
        for t in 1..=-steps {
            acc = acc.divide(&base.scale_z_by(qi.pow(-t), backend)?)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Grid, PointBackend, Rational, SymbolicBackend};

    #[test]
    fn one_variable_shift_is_one_minus_z() {
        let g = Grid::default();
        let b = SymbolicBackend::new(g);
        let o = Order::integer(4);
        let p = pochhammer_z_series(&[g.q1()], &o, &b).unwrap();
        let r = p.divide(&p.scale_z_by(g.q1(), &b).unwrap()).unwrap();
        let expect =
            PuiseuxSeries::from_coeffs(g, 64, [(0, int(1)), (16, int(-1))].map(|(e, c)| (e, crate::algebra::RationalFunction::from_rational(c))));
        assert_eq!(r, expect);
    }

    #[test]
    fn shift_ratio_matches_direct_division() {
        let g = Grid::default();
        let b = PointBackend::new(crate::algebra::ParameterPoint::defaults()[0].clone(), g);
        let o = Order::integer(3);
        let qs = [g.q1(), g.q2()];
        let p = pochhammer_z_series(&qs, &o, &b).unwrap();
        for steps in [-2, -1, 0, 1, 2] {
            let direct = p.divide(&p.scale_z_by(g.q2().pow(steps), &b).unwrap()).unwrap();
            assert_eq!(pochhammer_shift_ratio(&qs, 1, steps, &o, &b).unwrap(), direct, "steps {steps}");
        }
    }

    #[test]
    fn unit_base_rejected() {
        let g = Grid::default();
        let b = SymbolicBackend::new(g);
        assert!(pochhammer_z_series(&[Monomial::ONE], &Order::integer(1), &b).is_err());
        let one: PuiseuxSeries<Rational> =
            pochhammer_z_series(&[g.q1()], &Order::integer(0), &PointBackend::new(crate::algebra::ParameterPoint::defaults()[0].clone(), g)).unwrap();
        assert_eq!(one.len(), 1);
    }
}
