//! Algebraic invariants under random inputs.

use nekrasov_blowup::algebra::{
    format_rational, parse_rational, parse_series, ratio, serialize_series, Backend, Field, Grid, Monomial, Order, ParameterPoint, PointBackend,
    PuiseuxSeries, Rational, RationalFunction, SymbolicBackend,
};
use nekrasov_blowup::bilinear::{relation_residual, Minus2Relation, RelationId};
use nekrasov_blowup::blowup::ny_residual;
use nekrasov_blowup::identities::{check_symmetry, SymmetryKind};
use nekrasov_blowup::nekrasov::{Level, Parity, Sign};
use nekrasov_blowup::partitions::{partitions_of, Cell, Partition};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| ratio(n, d))
}

fn partition() -> impl Strategy<Value = Partition> {
    (0u32..9).prop_flat_map(|n| {
        let all = partitions_of(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

/// Series with exponents on the 1/16 grid below `trunc`.
fn series(trunc: i64) -> impl Strategy<Value = PuiseuxSeries<Rational>> {
    prop::collection::vec((0..trunc, rational()), 0..6).prop_map(move |terms| {
        let mut s = PuiseuxSeries::zero(Grid::default(), trunc);
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        s
    })
}

fn unit_series(trunc: i64) -> impl Strategy<Value = PuiseuxSeries<Rational>> {
    (series(trunc), rational().prop_filter("nonzero", |c| !Field::is_zero(c))).prop_map(move |(s, c)| {
        let mut s = s.restrict_exponents(1, 0).shift(1).truncate(trunc);
        s.add_term(0, &c);
        s
    })
}

fn small_root() -> impl Strategy<Value = Rational> {
    (2i64..9, 2i64..9).prop_filter("not one", |(a, b)| a != b).prop_map(|(a, b)| ratio(a, b))
}

fn point() -> impl Strategy<Value = ParameterPoint> {
    (small_root(), small_root(), small_root()).prop_filter_map("admissible point", |(a, b, c)| ParameterPoint::new(a, b, c).ok())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn transpose_is_an_involution(p in partition()) {
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!(p.transpose().weight(), p.weight());
    }

    #[test]
    fn hooks_add_up(p in partition()) {
        // arm and leg swap under transposition; hooks are positive inside
        for s in p.cells() {
            prop_assert!(p.hook(s) >= 1);
            prop_assert_eq!(p.arm(s), p.transpose().leg(s.transposed()));
        }
        // sum of hooks = sum over cells of (row + column content), a classical identity
        let hooks: i64 = p.cells().map(|s| p.hook(s)).sum();
        let n = p.parts().iter().map(|&r| r as i64).sum::<i64>();
        let rows: i64 = p.parts().iter().map(|&r| (r as i64) * (r as i64 + 1) / 2).sum();
        let cols: i64 = p.transpose().parts().iter().map(|&c| (c as i64) * (c as i64 + 1) / 2).sum();
        prop_assert_eq!(hooks, rows + cols - n);
    }

    #[test]
    fn arm_and_leg_outside_the_diagram(p in partition(), r in 1u32..6, c in 1u32..6) {
        let s = Cell::new(r, c);
        prop_assert_eq!(p.arm(s), p.row(r) as i64 - c as i64);
        prop_assert_eq!(p.leg(s), p.column(c) as i64 - r as i64);
    }

    #[test]
    fn multiplication_is_associative(a in series(48), b in series(48), c in series(48)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn division_inverts_multiplication(a in series(40), b in unit_series(40)) {
        let q = a.mul(&b).divide(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn sub_is_add_neg(a in series(32), b in series(32)) {
        prop_assert_eq!(a.sub(&b), a.add(&b.neg()));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn series_text_round_trip(a in series(64)) {
        let text = serialize_series(&a).unwrap();
        let back: PuiseuxSeries<Rational> = parse_series(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(serialize_series(&back).unwrap(), text);
    }

    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn order_parses(n in 1i64..40, d in 1i64..5) {
        let o: Order = format!("{n}/{d}").parse().unwrap();
        prop_assert_eq!(o.value(), &ratio(n, d));
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        p in point(),
        ea in prop::array::uniform3(-3i64..4), eb in prop::array::uniform3(-3i64..4),
        ca in rational(), cb in rational(),
    ) {
        let point = PointBackend::new(p, Grid::default());
        let sym = SymbolicBackend::new(Grid::default());
        // (c_a m_a) / (1 - m_b) evaluated two ways
        let (ma, mb) = (Monomial(ea), Monomial(eb));
        prop_assume!(!mb.is_one());
        let f = sym.factored(&ca, ma, &[(mb, -1)]).unwrap();
        let g = RationalFunction::monomial(mb, cb.clone());
        let direct = point.factored(&ca, ma, &[(mb, -1)]);
        let value = |r: &RationalFunction| point.evaluate(r);
        match direct {
            Ok(d) => {
                prop_assert_eq!(value(&f).unwrap(), d.clone());
                prop_assert_eq!(value(&f.plus(&g)).unwrap(), d.plus(&value(&g).unwrap()));
                prop_assert_eq!(value(&f.times(&g)).unwrap(), d.times(&value(&g).unwrap()));
            }
            Err(_) => prop_assert!(value(&f).is_err()),
        }
    }
}

proptest! {
    #![proptest_config(config(6))]

    #[test]
    fn symmetries_hold_at_random_points(point in point(), l in 0i64..3) {
        prop_assume!(point.check_poles(2).is_ok());
        let b = PointBackend::new(point, Grid::default());
        for kind in [SymmetryKind::SwapQ, SymmetryKind::InvertU, SymmetryKind::CsNegate] {
            let r = check_symmetry(kind, Level::new(l).unwrap(), &Order::integer(2), &b).unwrap();
            prop_assert!(r.is_zero(), "{} l={}", kind, l);
        }
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn blowup_relations_hold_at_random_points(point in point(), l in 0i64..2, d in -1i64..2, j in 0u8..2) {
        prop_assume!(point.check_poles(2).is_ok());
        let b = PointBackend::new(point, Grid::default());
        let r = ny_residual(Level::new(l).unwrap(), d, Parity::from_index(j).unwrap(), &Order::integer(2), &b).unwrap();
        prop_assert!(r.is_zero());
    }

    #[test]
    fn minus2_relations_hold_at_random_points(point in point(), i in 0usize..5, plus in any::<bool>()) {
        prop_assume!(point.check_poles(2).is_ok());
        let id = [RelationId::R424, RelationId::RB5, RelationId::RB5m, RelationId::R423, RelationId::RCS1][i];
        let rel = Minus2Relation::new(id, if plus { Sign::Plus } else { Sign::Minus }).unwrap();
        let b = PointBackend::new(point, Grid::default());
        prop_assert!(relation_residual(&rel, &Order::integer(1), &b).unwrap().is_zero());
    }
}
