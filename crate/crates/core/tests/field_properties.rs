use proptest::prelude::*;
use qcarlitz::{Poly, RatFunc, Rational, ZPoly};

fn zpoly(max_deg: usize) -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-6i64..=6, 0..=max_deg + 1).prop_map(|c| ZPoly::from_i64s(&c))
}

fn nonzero_zpoly(max_deg: usize) -> impl Strategy<Value = ZPoly> {
    zpoly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (zpoly(3), nonzero_zpoly(3)).prop_map(|(n, d)| RatFunc::from_zpolys(&n, &d).unwrap())
}

fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("nonzero", |r| !r.is_zero())
}

fn is_canonical(r: &RatFunc) -> bool {
    let den = r.den();
    let monic = den.leading().is_some_and(|c| *c == Rational::from_integer(1.into()));
    let renormalised = RatFunc::new(&r.num(), &den).unwrap();
    monic && renormalised == *r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_is_associative_and_commutative(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_is_associative_and_distributive(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn inverses(a in nonzero_ratfunc()) {
        prop_assert!((&a * &a.inv().unwrap()).is_one());
        prop_assert!((&a - &a).is_zero());
        prop_assert!(a.try_div(&a).unwrap().is_one());
    }

    #[test]
    fn results_are_canonical(a in ratfunc(), b in nonzero_ratfunc()) {
        for r in [&a + &b, &a - &b, &a * &b, a.try_div(&b).unwrap()] {
            prop_assert!(is_canonical(&r));
        }
    }

    #[test]
    fn normalisation_is_idempotent(n in zpoly(4), d in nonzero_zpoly(4)) {
        let once = RatFunc::new(&Poly::from(&n), &Poly::from(&d)).unwrap();
        let twice = RatFunc::new(&once.num(), &once.den()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in ratfunc(), b in ratfunc(), d in 1u32..=5) {
        prop_assert_eq!((&a * &b).substitute_power(d), &a.substitute_power(d) * &b.substitute_power(d));
        prop_assert_eq!((&a + &b).substitute_power(d), &a.substitute_power(d) + &b.substitute_power(d));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), x in -4i64..=4) {
        let x = Rational::from_integer(x.into());
        if let (Ok(va), Ok(vb)) = (a.eval(&x), b.eval(&x)) {
            if let Ok(vab) = (&a * &b).eval(&x) {
                prop_assert_eq!(vab, &va * &vb);
            }
            if let Ok(s) = (&a + &b).eval(&x) {
                prop_assert_eq!(s, va + vb);
            }
        }
    }
}

#[test]
fn normalisation_examples() {
    let p = |c: &[i64]| Poly::from_i64s(c);
    let r = RatFunc::new(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap();
    assert_eq!((r.num(), r.den()), (p(&[1, 1]), p(&[1])));
    let r = RatFunc::new(&p(&[]), &p(&[0, 0, 0, 1])).unwrap();
    assert_eq!((r.num(), r.den()), (p(&[]), p(&[1])));
    let r = RatFunc::new(&p(&[1, -2, 1]), &p(&[1, 0, -1])).unwrap();
    assert_eq!((r.num(), r.den()), (p(&[1, -1]), p(&[1, 1])));
    assert!(RatFunc::new(&p(&[1]), &p(&[])).is_err());
}

#[test]
fn arithmetic_examples() {
    let rf = |n: &[i64], d: &[i64]| RatFunc::from_zpolys(&ZPoly::from_i64s(n), &ZPoly::from_i64s(d)).unwrap();
    assert!((&rf(&[1], &[1, 1]) + &rf(&[0, 1], &[1, 1])).is_one());
    assert_eq!(&rf(&[1, 1], &[1]) * &rf(&[1], &[-1, 0, 1]), rf(&[1], &[-1, 1]));
    // (q / ((1+q)(1+q+q^2))) / q
    let b2 = rf(&[0, 1], &[1, 2, 2, 1]);
    assert_eq!(b2.try_div(&RatFunc::q_pow(1)).unwrap(), rf(&[1], &[1, 2, 2, 1]));
    assert!(b2.try_div(&RatFunc::zero()).is_err());
}

#[test]
fn substitution_examples() {
    let rf = |n: &[i64], d: &[i64]| RatFunc::from_zpolys(&ZPoly::from_i64s(n), &ZPoly::from_i64s(d)).unwrap();
    assert_eq!(rf(&[1, 1], &[1]).substitute_power(3), rf(&[1, 0, 0, 1], &[1]));
    let s = rf(&[1], &[1, -1]).substitute_power(2);
    assert_eq!((s.num(), s.den()), (Poly::from_i64s(&[-1]), Poly::from_i64s(&[-1, 0, 1])));
    assert_eq!(rf(&[1, 1], &[1]).substitute_power(2), qcarlitz::qcore::q_int(2, 2));
}

#[test]
fn evaluation_examples() {
    let rf = |n: &[i64], d: &[i64]| RatFunc::from_zpolys(&ZPoly::from_i64s(n), &ZPoly::from_i64s(d)).unwrap();
    let int = |n: i64| Rational::from_integer(n.into());
    assert_eq!(rf(&[1, 1], &[1]).eval(&int(2)).unwrap(), int(3));
    assert_eq!(
        rf(&[0, 1], &[1, 2, 2, 1]).eval(&int(1)).unwrap(),
        Rational::new(1.into(), 6.into())
    );
    assert!(matches!(rf(&[1], &[-1, 1]).eval(&int(1)), Err(qcarlitz::Error::Pole(_))));
}
