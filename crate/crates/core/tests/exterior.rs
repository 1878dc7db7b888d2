use gbv_core::exterior::{default_names, parse_multivector, Blade, Multivector};
use gbv_core::scalar::{parse_poly, rat, Poly, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

type Mv = Multivector<Rational>;

/// Sign of sorting the concatenation of `s` and `t` by adjacent swaps, or
/// `None` when an index repeats.
fn bubble_sign(s: &[usize], t: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v: Vec<usize> = s.iter().chain(t).copied().collect();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

fn indices(b: Blade) -> Vec<usize> {
    b.indices().collect()
}

#[test]
fn blade_wedge_matches_bubble_sort_dim6() {
    for s in Blade::all(6) {
        for t in Blade::all(6) {
            let got = s.wedge(t);
            match bubble_sign(&indices(s), &indices(t)) {
                None => assert!(got.is_none(), "{s:?} {t:?}"),
                Some((sign, v)) => {
                    let (neg, u) = got.expect("disjoint");
                    assert_eq!(indices(u), v);
                    assert_eq!(neg, sign < 0, "{s:?} {t:?}");
                }
            }
        }
    }
}

#[test]
fn associativity_and_super_commutativity_dim6() {
    let blades = Blade::all(6);
    let mv = |b: Blade| Mv::blade(6, b);
    for &a in &blades {
        for &b in &blades {
            assert!(mv(a).super_commutativity_check(&mv(b)).unwrap());
            for &c in &blades {
                assert_eq!(&(&mv(a) * &mv(b)) * &mv(c), &mv(a) * &(&mv(b) * &mv(c)));
            }
        }
    }
}

#[test]
fn wedge_examples() {
    let e = |i| Mv::generator(3, i);
    assert_eq!(&e(0) * &e(1), Mv::blade(3, Blade(0b11)));
    assert_eq!(&e(1) * &e(0), -Mv::blade(3, Blade(0b11)));
    let v = &e(0) * &e(2) + e(1).scaled(&rat(3, 4));
    assert_eq!(&Mv::one(3) * &v, v);
    assert!((&(&e(0) * &e(1)) * &(&e(0) * &e(2))).is_zero());
}

#[test]
fn contract_degree_examples() {
    let e = |i| Mv::generator(4, i);
    let v = Mv::one(4) + e(0) + &e(0) * &e(1);
    assert_eq!(v.contract_degree(1), e(0));
    assert!(Mv::zero(4).contract_degree(2).is_zero());
    let w = &e(0) * &e(1) + &e(2) * &e(3);
    assert_eq!(w.contract_degree(2), w);
}

#[test]
fn text_form_examples() {
    let names: Vec<String> = ["dx", "dy"].iter().map(|s| s.to_string()).collect();
    let f = parse_poly("x^2 + y^2", 2).unwrap();
    let v = Multivector::term(2, Blade(0b11), f);
    assert_eq!(v.to_text(&names), "(x^2 + y^2) * dx^dy");
    let back: Multivector<Poly> = parse_multivector("(x^2 + y^2) * dx^dy", &names).unwrap();
    assert_eq!(back, v);
    let w: Mv = parse_multivector("1/2 * e2^e1 + 3", &default_names(2)).unwrap();
    assert_eq!(w.to_text(&default_names(2)), "3 + -1/2 * e1^e2");
}

#[test]
fn inhomogeneous_super_commutativity_is_an_error() {
    let v = Mv::one(2) + Mv::generator(2, 0);
    assert!(v.super_commutativity_check(&Mv::generator(2, 1)).is_err());
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_mv(dim: usize) -> impl Strategy<Value = Mv> {
    prop::collection::vec((0u64..(1 << dim), arb_rational()), 0..8)
        .prop_map(move |terms| Mv::from_terms(dim, terms.into_iter().map(|(b, c)| (Blade(b), c))))
}

fn arb_homogeneous(dim: usize) -> impl Strategy<Value = Mv> {
    (0..=dim).prop_flat_map(move |k| {
        let blades = Blade::all_of_degree(dim, k);
        prop::collection::vec((prop::sample::select(blades), arb_rational()), 0..5)
            .prop_map(move |terms| Mv::from_terms(dim, terms))
    })
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u16..3, 0u16..3, -4i64..=4), 0..5).prop_map(|terms| {
        let mut p = Poly::zero();
        for (a, b, c) in terms {
            p.add_term(gbv_core::scalar::Exponent::from_slice(&[a, b]), &rat(c, 1));
        }
        p
    })
}

proptest! {
    #[test]
    fn wedge_is_associative(a in arb_mv(5), b in arb_mv(5), c in arb_mv(5)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn wedge_is_bilinear(a in arb_mv(5), b in arb_mv(5), c in arb_mv(5), q in arb_rational()) {
        prop_assert_eq!(&a * &(b.clone() + c.scaled(&q)), &a * &b + (&a * &c).scaled(&q));
    }

    #[test]
    fn homogeneous_elements_super_commute(a in arb_homogeneous(6), b in arb_homogeneous(6)) {
        prop_assert!(a.super_commutativity_check(&b).unwrap());
    }

    #[test]
    fn no_zero_coefficients_are_stored(a in arb_mv(5), b in arb_mv(5)) {
        for v in [&a * &b, a.clone() - a.clone(), a.clone() + b.clone(), a.scaled(&Rational::zero())] {
            prop_assert!(v.terms().all(|(_, c)| !c.is_zero()));
        }
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn serde_round_trip(a in arb_mv(6)) {
        let json = serde_json::to_string(&a).unwrap();
        let back: Mv = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn poly_serde_round_trip(p in arb_poly(), q in arb_poly()) {
        let v = Multivector::from_terms(2, [(Blade(0b01), p), (Blade(0b11), q)]);
        let json = serde_json::to_string(&v).unwrap();
        let back: Multivector<Poly> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn poly_text_round_trip(p in arb_poly()) {
        prop_assert_eq!(parse_poly(&p.to_string(), 2).unwrap(), p);
    }

    #[test]
    fn poly_derivative_is_a_derivation(p in arb_poly(), q in arb_poly(), i in 0usize..2) {
        let lhs = (p.clone() * q.clone()).derivative(i);
        let rhs = p.derivative(i) * q.clone() + p * q.derivative(i);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rationals_are_normalized(n in -50i64..50, d in 1i64..50) {
        let q = rat(n, -d);
        prop_assert!(q.denom() > &num_bigint::BigInt::zero());
        prop_assert!(num_integer::Integer::gcd(q.numer(), q.denom()).is_one());
    }
}
