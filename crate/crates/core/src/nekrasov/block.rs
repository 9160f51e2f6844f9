use super::EpsilonPair;
use crate::algebra::{LaurentPoly, Monomial};
use crate::partitions::Partition;

/// Monomials `m` such that `N_{λ,μ}(w) = ∏ (1 - m)`.
pub fn block_factors(lambda: &Partition, mu: &Partition, w: Monomial, eps: &EpsilonPair) -> Vec<Monomial> {
    let (a, b) = (eps.a(), eps.b());
    let mut out = Vec::with_capacity((lambda.weight() + mu.weight()) as usize);
    for s in lambda.cells() {
        out.push(w * b.pow(-mu.arm(s) - 1) * a.pow(lambda.leg(s)));
    }
    for s in mu.cells() {
        out.push(w * b.pow(lambda.arm(s)) * a.pow(-mu.leg(s) - 1));
    }
    out
}

/// The combinatorial block `N_{λ,μ}(w; q1, q2)` as a Laurent polynomial.
pub fn nekrasov_block(lambda: &Partition, mu: &Partition, w: Monomial, eps: &EpsilonPair) -> LaurentPoly {
    block_factors(lambda, mu, w, eps).into_iter().fold(LaurentPoly::one(), |acc, m| &acc * &LaurentPoly::one_minus(m))
}

/// The Chern-Simons monomial `T_λ(w) = ∏_{(i,j)∈λ} w^{-1} q1^{1-i} q2^{1-j}`.
pub fn cs_term(lambda: &Partition, w: Monomial, eps: &EpsilonPair) -> Monomial {
    lambda.cells().fold(Monomial::ONE, |acc, s| acc * w.inv() * eps.a().pow(1 - s.row as i64) * eps.b().pow(1 - s.col as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Grid;

    #[test]
    fn small_blocks() {
        let g = Grid::default();
        let eps = EpsilonPair::standard(g);
        let e = Partition::empty();
        let box1 = Partition::new([1]);
        assert!(nekrasov_block(&e, &e, g.u(), &eps).is_one());
        assert_eq!(nekrasov_block(&box1, &e, g.u(), &eps), LaurentPoly::one_minus(g.u()));
        let expect = &LaurentPoly::one_minus(g.q2().inv()) * &LaurentPoly::one_minus(g.q1().inv());
        assert_eq!(nekrasov_block(&box1, &box1, Monomial::ONE, &eps), expect);
    }

    #[test]
    fn cs_terms() {
        let g = Grid::default();
        let eps = EpsilonPair::standard(g);
        assert!(cs_term(&Partition::empty(), g.u(), &eps).is_one());
        assert_eq!(cs_term(&Partition::new([1]), g.u(), &eps), g.u().inv());
        assert_eq!(cs_term(&Partition::new([2]), g.u(), &eps), g.u().pow(-2) * g.q2().inv());
    }
}
