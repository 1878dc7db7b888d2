use std::sync::Arc;

use gbv_core::exterior::{Blade, Multivector};
use gbv_core::gerstenhaber::checks::{check_bracket_generation, check_graded_jacobi, check_seven_term, check_square_zero};
use gbv_core::gerstenhaber::{
    anticommutator, divergence_from_delta, is_strong_differential, schouten_bracket, Adjoint, BvOperator, Divergence,
    GerstenhaberContext,
};
use gbv_core::lie::{aff2, preset, sl2, sl3, LieAlgebra};
use gbv_core::operator::{GradedBasis, GradedOperator, LinearOperator};
use gbv_core::poisson::{PoissonBivector, PolyLieRinehart, TruncationWindow};
use gbv_core::scalar::{parse_poly, rat, Exponent, Poly, Rational};
use num_traits::Zero;
use proptest::prelude::*;

type Mv = Multivector<Rational>;

fn poly(s: &str) -> Poly {
    parse_poly(s, 2).unwrap()
}

/// Δ on a blade by the two-sum formula with zero divergence, built from the
/// generator brackets only.
fn ce_oracle(g: &LieAlgebra, s: Blade) -> Mv {
    let dim = g.dim();
    let idx: Vec<usize> = s.indices().collect();
    let mut out = Mv::zero(dim);
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &v)| v).collect();
            let sign = if (i + j) % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let br = g.generator_bracket(idx[i], idx[j]);
            let tail = Mv::wedge_of(dim, &rest, rat(1, 1));
            out += &(&br * &tail).scaled(&sign);
        }
    }
    out
}

#[test]
fn schouten_examples() {
    let g = sl2();
    assert_eq!(g.bracket(&g.gen("h"), &g.gen("x")).unwrap(), g.gen("x").scaled(&rat(2, 1)));
    let a = Mv::scalar(3, rat(3, 1));
    let b = Mv::scalar(3, rat(-5, 2));
    assert!(g.bracket(&a, &b).unwrap().is_zero());

    let lr = PolyLieRinehart::planar();
    let f = lr.scalar(poly("x^2 + y^2"));
    let vol = Multivector::blade(2, Blade(0b11));
    let got = schouten_bracket(&lr, &f, &vol).unwrap();
    assert_eq!(lr.text(&got), "(2*y) * dx + (-2*x) * dy");
    let pi = vol.scaled(&poly("x^3 - x*y + 2"));
    assert!(schouten_bracket(&lr, &pi, &pi).unwrap().is_zero());
}

#[test]
fn hamiltonian_field_sign() {
    let p = PoissonBivector::planar(Poly::constant(rat(1, 1)));
    assert_eq!(p.text(&p.hamiltonian_field(&poly("x"))), "(-1) * dy");
    assert!(p.hamiltonian_field(&poly("7/3")).is_zero());
    let q = PoissonBivector::planar(poly("x^2 + y^2"));
    assert_eq!(q.text(&q.hamiltonian_field(&poly("x"))), "(-x^2 - y^2) * dy");
    // f(g_y ∂x − g_x ∂y)
    let g = poly("x*y^2 + y");
    let f = poly("x^2 + y^2");
    let want = PolyLieRinehart::planar().field(&[f.clone() * g.derivative(1), -(f * g.derivative(0))]);
    assert_eq!(q.hamiltonian_field(&g), want);
}

#[test]
fn delta_examples() {
    let g = aff2();
    let ce = g.chevalley_eilenberg();
    let hx = &g.gen("h") * &g.gen("x");
    assert_eq!(ce.delta(&hx), -g.gen("x"));

    let s = sl2();
    let ce = s.chevalley_eilenberg();
    let xhy = &(&s.gen("x") * &s.gen("h")) * &s.gen("y");
    assert!(ce.delta(&xhy).is_zero());
    assert_eq!(ce.delta(&(&s.gen("x") * &s.gen("y"))), -s.gen("h"));
    assert!(ce.delta(&Mv::scalar(3, rat(4, 1))).is_zero());

    let lr = PolyLieRinehart::planar();
    let pi = Multivector::blade(2, Blade(0b11)).scaled(&poly("x^2 + y^2"));
    assert_eq!(lr.text(&lr.bv().delta(&pi)), "(2*y) * dx + (-2*x) * dy");
}

#[test]
fn delta_matches_oracle_on_every_blade() {
    for g in [aff2(), sl2(), sl3()] {
        let ce = g.chevalley_eilenberg();
        for s in Blade::all(g.dim()) {
            assert_eq!(ce.delta(&Mv::blade(g.dim(), s)), ce_oracle(&g, s), "{s:?}");
        }
    }
}

#[test]
fn bracket_from_delta_examples() {
    let g = sl2();
    let ce = g.chevalley_eilenberg();
    let (x, y) = (g.gen("x"), g.gen("y"));
    assert_eq!(ce.bracket_from_delta(&x, &y).unwrap(), g.bracket(&x, &y).unwrap());
    for v in g.exterior_basis() {
        assert!(ce.bracket_from_delta(&Mv::one(3), &v).unwrap().is_zero());
    }
    let elems = g.exterior_basis();
    assert!(check_bracket_generation(&ce, &elems).holds);
    let inhomogeneous = Mv::one(3) + x.clone();
    assert!(ce.bracket_from_delta(&inhomogeneous, &y).is_err());
}

#[test]
fn generic_identities_on_sl2() {
    let g = sl2();
    let ce = g.chevalley_eilenberg();
    let elems = g.exterior_basis();
    assert!(check_seven_term(&ce, &elems, g.names()).holds);
    assert!(check_square_zero(&ce, &elems, g.names(), "Δ").holds);
    assert!(check_graded_jacobi(&g, &elems).holds);
}

#[test]
fn tables_agree_with_generic_checks() {
    for g in [aff2(), sl2()] {
        let t = g.blade_tables().unwrap();
        let ce = g.chevalley_eilenberg();
        let elems = g.exterior_basis();
        assert!(t.delta_squared(g.names()).holds);
        assert_eq!(t.seven_term().is_none(), check_seven_term(&ce, &elems, g.names()).holds);
        assert_eq!(t.bracket_generation().is_none(), check_bracket_generation(&ce, &elems).holds);
        assert_eq!(t.graded_jacobi().is_none(), check_graded_jacobi(&g, &elems).holds);
    }
    // A functional with div[x,y] ≠ 0 is not a divergence: both paths must fail.
    let g = sl2();
    let bad = BvOperator::new(g.clone(), Divergence::new(vec![rat(0, 1), rat(1, 1), rat(0, 1)]));
    let dim = g.dim();
    let t = gbv_core::gerstenhaber::tables::BladeTables::new(dim, |b| bad.delta(&Mv::blade(dim, b)), None).unwrap();
    let elems = g.exterior_basis();
    assert_eq!(t.delta_squared(g.names()).holds, check_square_zero(&bad, &elems, g.names(), "Δ").holds);
    assert!(!check_square_zero(&bad, &elems, g.names(), "Δ").holds);
    assert_eq!(t.seven_term().is_none(), check_seven_term(&bad, &elems, g.names()).holds);
}

#[test]
fn divergence_recovery() {
    let g = sl2();
    let ce = g.chevalley_eilenberg();
    let div = divergence_from_delta(&g, &ce, &g.exterior_basis(), &[]).unwrap();
    assert_eq!(div, Divergence::zero(3));

    let lr = PolyLieRinehart::planar();
    let probe: Vec<Multivector<Poly>> = GradedBasis::window(2, 2, |_| 2).elements(0).into_iter()
        .chain(GradedBasis::window(2, 2, |_| 2).elements(1))
        .chain(GradedBasis::window(2, 2, |_| 2).elements(2))
        .collect();
    let scalars = [poly("x^2*y - 1"), poly("y + 3*x")];
    let div = divergence_from_delta(&lr, &lr.bv(), &probe, &scalars).unwrap();
    let field = lr.field(&[poly("x^2*y"), poly("x*y^3")]);
    assert_eq!(div.eval(&lr, &field).unwrap(), poly("2*x*y + 3*x*y^2"));

    let a0 = poly("x*y + y^2");
    let shifted = lr.shifted_bv(a0.clone());
    let div_s = divergence_from_delta(&lr, &shifted, &probe, &scalars).unwrap();
    let expect = poly("2*x*y + 3*x*y^2") + poly("x^2*y") * a0.derivative(0) + poly("x*y^3") * a0.derivative(1);
    assert_eq!(div_s.eval(&lr, &field).unwrap(), expect);
    // Δ̃ = Δ + [a₀,−] on the probe.
    let ad = Adjoint::new(&lr, lr.scalar(a0)).unwrap();
    for v in &probe {
        assert_eq!(shifted.delta(v), lr.bv().delta(v) + ad.apply(v));
    }
}

#[test]
fn divergence_round_trip_on_lie_algebras() {
    // On aff₂ the functionals vanishing on [𝔤,𝔤] = ℚx are divergences.
    let g = aff2();
    for c in [-2i64, 0, 3] {
        let div = Divergence::new(vec![rat(c, 1), rat(0, 1)]);
        let bv = BvOperator::new(g.clone(), div.clone());
        assert_eq!(divergence_from_delta(&g, &bv, &g.exterior_basis(), &[]).unwrap(), div);
    }
    let bad = BvOperator::new(g.clone(), Divergence::new(vec![rat(0, 1), rat(1, 1)]));
    assert!(divergence_from_delta(&g, &bad, &g.exterior_basis(), &[]).is_err());
}

#[test]
fn strong_differential_examples() {
    let (g, c) = preset("aff2_case3", Some(rat(1, 2))).unwrap();
    let d = c.d_delta();
    assert!(is_strong_differential(&d, &g, &g.exterior_basis()).holds());

    let ce = g.chevalley_eilenberg();
    let r = is_strong_differential(&ce, &g, &g.exterior_basis());
    assert!(!r.holds());
    assert!(!r.degree.holds);

    let p = PoissonBivector::planar(poly("x^3 - 2*x*y + y^2"));
    let lr = *p.context();
    let elems: Vec<Multivector<Poly>> = {
        let b = TruncationWindow::new(2).unwrap().basis(&lr);
        (0..=2).flat_map(|k| b.elements(k)).collect()
    };
    assert!(is_strong_differential(&p.d_pi(), &lr, &elems).holds());
}

#[test]
fn anticommutator_examples() {
    let (g, c) = preset("aff2_case2", None).unwrap();
    let b = Arc::new(GradedBasis::exterior(2));
    let op = anticommutator(&g.chevalley_eilenberg(), &c.d_delta(), b.clone(), b.clone()).unwrap();
    // −∂_𝒟 with 𝒟(h) = x, 𝒟(x) = 0.
    assert_eq!(op.apply_checked(&g.gen("h")).unwrap(), -g.gen("x"));
    assert!(op.apply_checked(&g.gen("x")).unwrap().is_zero());

    let (g, c) = preset("aff2_trivial", None).unwrap();
    let op = anticommutator(&g.chevalley_eilenberg(), &c.d_delta(), b.clone(), b).unwrap();
    assert!(op.is_zero());

    let p = PoissonBivector::planar(poly("x^2 + y^2"));
    let lr = *p.context();
    let dom = Arc::new(GradedBasis::window(2, 2, |_| 2));
    let cod = Arc::new(GradedBasis::window(2, 2, |_| 3));
    let op = anticommutator(&lr.bv(), &p.d_pi(), dom.clone(), cod.clone()).unwrap();
    let x = p.modular_class().unwrap();
    assert_eq!(lr.text(&x), "(2*y) * dx + (-2*x) * dy");
    let ad = LinearOperator::materialize(&Adjoint::new(&lr, x).unwrap(), dom, cod).unwrap();
    assert!(op.first_difference(&ad).is_none());

    // d_CE is not a strong differential: rejected.
    let g = sl2();
    let b = Arc::new(GradedBasis::exterior(3));
    assert!(anticommutator(&g.chevalley_eilenberg(), &g.chevalley_eilenberg(), b.clone(), b).is_err());
}

#[test]
fn seven_term_on_polynomial_fields() {
    let lr = PolyLieRinehart::planar();
    let basis = GradedBasis::window(2, 2, |_| 3);
    let elems: Vec<Multivector<Poly>> = (0..=2).flat_map(|k| basis.elements(k)).collect();
    let names = lr.generator_names();
    for bv in [lr.bv(), lr.shifted_bv(poly("x^2*y - y"))] {
        assert!(check_seven_term(&bv, &elems, &names).holds);
        assert!(check_square_zero(&bv, &elems, &names, "Δ").holds);
        assert!(check_bracket_generation(&bv, &elems).holds);
    }
}

fn arb_poly(max: u16) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0..=max, 0..=max, -5i64..=5), 0..6).prop_map(|terms| {
        let mut p = Poly::zero();
        for (a, b, c) in terms {
            p.add_term(Exponent::from_slice(&[a, b]), &rat(c, 1));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planar_modular_class_formula(f in arb_poly(4)) {
        let p = PoissonBivector::planar(f.clone());
        let want = PolyLieRinehart::planar().field(&[f.derivative(1), -f.derivative(0)]);
        prop_assert_eq!(p.modular_class().unwrap(), want);
    }

    #[test]
    fn divergence_axioms_hold_for_random_shifts(a in arb_poly(3), f in arb_poly(3), g in arb_poly(3)) {
        let lr = PolyLieRinehart::planar();
        gbv_core::gerstenhaber::check_divergence_axioms(&lr, &lr.divergence().shifted(a), &[f, g]).unwrap();
    }

    #[test]
    fn poly_bracket_is_antisymmetric_and_leibniz(f in arb_poly(2), g in arb_poly(2), h in arb_poly(2)) {
        let lr = PolyLieRinehart::planar();
        let elems = vec![
            lr.scalar(f.clone()),
            lr.field(&[g.clone(), h.clone()]),
            Multivector::blade(2, Blade(0b11)).scaled(&f),
            lr.field(&[h, f]),
        ];
        prop_assert!(gbv_core::gerstenhaber::checks::check_antisymmetry(&lr, &elems).holds);
        prop_assert!(gbv_core::gerstenhaber::checks::check_bracket_leibniz_rule(&lr, &elems).holds);
        prop_assert!(check_graded_jacobi(&lr, &elems).holds);
    }
}
