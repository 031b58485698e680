use bcice::arith::{format_rational, int, parse_rational, MonomialWeight, QLaurent, Rational};
use bcice::braket::{braket_partition_function, f_matrices, BraketMethod};
use bcice::lattice::{partition_function_a, partition_function_bc, BendRow, BendWeights, Partition, SpectralPoint};
use bcice::relations::{check_fish_numeric, check_unitarity, check_ybe};
use bcice::special::{macdonald_p, RootSystemSpec};
use num_traits::One;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=17).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != int(0))
}

fn laurent() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-3i32..=3, rational()), 0..4).prop_map(QLaurent::from_terms)
}

fn point(r: usize) -> impl Strategy<Value = SpectralPoint> {
    (nonzero(), prop::collection::vec(nonzero(), r))
        .prop_map(|(q, xs)| SpectralPoint::new(q, xs))
        .prop_filter("generic", SpectralPoint::is_generic)
}

fn small_partition(r: usize, max: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max, r).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn laurent_eval_is_a_homomorphism(a in laurent(), b in laurent(), q in nonzero()) {
        let ev = |p: &QLaurent| p.eval(&q).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }

    #[test]
    fn monomial_weight_eval_is_multiplicative(
        a in laurent(), da in -3i32..=3, b in laurent(), db in -3i32..=3, x in nonzero(), q in nonzero()
    ) {
        let (u, v) = (MonomialWeight::new(a, da), MonomialWeight::new(b, db));
        let lhs = u.mul(&v).eval(&x, &q).unwrap();
        prop_assert_eq!(lhs, u.eval(&x, &q).unwrap() * v.eval(&x, &q).unwrap());
    }

    #[test]
    fn crossing_relations_hold_at_generic_points(pt in point(2)) {
        prop_assert!(check_unitarity(pt.x(1), pt.x(2), &pt.q).unwrap());
        prop_assert!(check_ybe(pt.x(1), pt.x(2), &pt.q, 2).unwrap());
    }

    #[test]
    fn equal_bc_rows_have_unit_fish_constant(a in laurent(), c in laurent(), d in laurent(), pt in point(1)) {
        let row = BendRow::equal_bc(a, c, d);
        let c = check_fish_numeric(&BendWeights::uniform(row, 1), 1, pt.x(1), &pt.q).unwrap();
        prop_assert!(c.holds);
        prop_assert_eq!(c.f, Rational::one());
    }

    #[test]
    fn type_c_polynomial_is_weyl_invariant(l in small_partition(2, 3), pt in point(2)) {
        let spec = RootSystemSpec::type_c(2);
        let p = macdonald_p(&spec, &l, &pt).unwrap();
        prop_assert_eq!(&macdonald_p(&spec, &l, &pt.swapped(1)).unwrap(), &p);
        prop_assert_eq!(&macdonald_p(&spec, &l, &pt.inverted(2)).unwrap(), &p);
    }

    #[test]
    fn type_a_partition_function_is_symmetric(l in small_partition(3, 3), pt in point(3)) {
        let z = partition_function_a(&l, &pt).unwrap();
        prop_assert_eq!(&partition_function_a(&l, &pt.swapped(1)).unwrap(), &z);
        prop_assert_eq!(&partition_function_a(&l, &pt.swapped(2)).unwrap(), &z);
    }

    #[test]
    fn f_times_f_star_is_diagonal(pt in point(2)) {
        let fm = f_matrices(&pt).unwrap();
        prop_assert_eq!(fm.f.mul(&fm.fstar), fm.delta);
    }

    #[test]
    fn braket_matches_enumeration(l in small_partition(2, 2), pt in point(2)) {
        let bw = BendWeights::uniform(BendRow::wzj(), 2);
        let z = partition_function_bc(&l, &bw, &pt).unwrap();
        prop_assert_eq!(&braket_partition_function(&l, &bw, &pt, BraketMethod::Braket).unwrap(), &z);
        prop_assert_eq!(&braket_partition_function(&l, &bw, &pt, BraketMethod::Twisted).unwrap(), &z);
    }
}
