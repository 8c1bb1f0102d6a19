use ktate_core::{BigInt, Direction, Laurent, LaurentI64, RatFn};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-8i64..9, -20i64..21), 0..6)
        .prop_map(|terms| Laurent::from_terms(terms.into_iter().map(|(d, c)| (d, BigInt::from(c)))))
}

/// Denominators with a ±1 term at both ends, so both expansions exist.
fn unit_den() -> impl Strategy<Value = Laurent> {
    (prop::bool::ANY, prop::collection::vec(-3i64..4, 0..4), prop::bool::ANY, 0i64..3).prop_map(
        |(a, mid, b, shift)| {
            let mut coeffs = vec![if a { 1 } else { -1 }];
            coeffs.extend(mid);
            coeffs.push(if b { 1 } else { -1 });
            Laurent::from_dense(-shift, &coeffs)
        },
    )
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (laurent(), unit_den()).prop_map(|(n, d)| RatFn::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Laurent::zero(), a.clone());
        prop_assert_eq!(&a * &Laurent::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-(-a.clone()), a.clone());
    }

    #[test]
    fn rational_field_laws(a in ratfn(), b in ratfn(), c in ratfn()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn equality_agrees_with_expansion(a in ratfn(), b in ratfn()) {
        // equal functions expand identically; sums expand to sums of tables
        let c = RatFn::new(a.numerator() * b.denominator(), a.denominator() * b.denominator());
        prop_assert_eq!(&c, &a);
        for dir in [Direction::AtZero, Direction::AtInfinity] {
            prop_assert_eq!(c.expand(dir, -15, 15).unwrap(), a.expand(dir, -15, 15).unwrap());
            let sum = (&a + &b).expand(dir, -15, 15).unwrap();
            let tables = a.expand(dir, -15, 15).unwrap().add(&b.expand(dir, -15, 15).unwrap());
            prop_assert_eq!(sum, tables);
        }
    }

    #[test]
    fn expansion_inverts_multiplication(a in ratfn()) {
        // the series of a times the denominator reproduces the numerator in low degrees
        let lo = -40;
        let table = a.expand(Direction::AtZero, lo, 20).unwrap();
        let series = Laurent::from_terms(table.iter().map(|(d, c)| (d, c.clone())));
        let prod = &series * a.denominator();
        let den_hi = a.denominator().max_degree().unwrap();
        for d in lo + den_hi..=20 {
            prop_assert_eq!(prod.coeff(d), a.numerator().coeff(d));
        }
    }

    #[test]
    fn inverse_variable_is_an_involution(a in ratfn(), b in ratfn()) {
        prop_assert_eq!(a.inverse_variable().inverse_variable(), a.clone());
        prop_assert_eq!((&a * &b).inverse_variable(), a.inverse_variable() * b.inverse_variable());
        let at_zero = a.expand(Direction::AtZero, -10, 10).unwrap();
        let at_inf = a.inverse_variable().expand(Direction::AtInfinity, -10, 10).unwrap();
        for d in -10..=10 {
            prop_assert_eq!(at_zero.get(d), at_inf.get(-d));
        }
    }

    #[test]
    fn text_and_json_round_trip(a in ratfn()) {
        prop_assert_eq!(a.to_string().parse::<RatFn>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<RatFn>(&json).unwrap(), a);
    }

    #[test]
    fn machine_integers_agree(terms in prop::collection::vec((-5i64..6, -50i64..51), 0..5)) {
        let small = LaurentI64::from_terms(terms.clone());
        let big = Laurent::from_terms(terms.into_iter().map(|(d, c)| (d, BigInt::from(c))));
        prop_assert_eq!(small.convert::<BigInt>().unwrap(), big.clone());
        prop_assert_eq!((&small * &small).convert::<BigInt>().unwrap(), &big * &big);
    }
}
