use gbv_core::exterior::Multivector;
use gbv_core::gerstenhaber::GerstenhaberContext;
use gbv_core::lie::json::BialgebraSpec;
use gbv_core::lie::{preset, sl2, sl3, Cobracket, LieAlgebra, PRESET_NAMES};
use gbv_core::linalg::Matrix;
use gbv_core::operator::GradedOperator;
use gbv_core::scalar::{rat, Rational};
use gbv_core::Error;

type Mv = Multivector<Rational>;

/// [v, a∧b] = [v,a]∧b + a∧[v,b] for v, a, b of degree 1, from generator brackets.
fn ad_on_wedge(g: &LieAlgebra, v: usize, a: usize, b: usize) -> Mv {
    let br = |i, j| g.bracket(&g.generator(i), &g.generator(j)).unwrap();
    &br(v, a) * &g.generator(b) + &g.generator(a) * &br(v, b)
}

fn idx(g: &LieAlgebra, n: &str) -> usize {
    g.index_of(n).unwrap()
}

#[test]
fn aff2_table() {
    let (g, c) = preset("aff2_trivial", None).unwrap();
    assert!(c.is_zero());
    let d = c.intrinsic_biderivation().unwrap();
    assert!(d.is_zero());
    assert!(c.is_involutive());

    let (g2, c) = preset("aff2_case2", None).unwrap();
    assert_eq!(g2, g);
    let (h, x) = (g.gen("h"), g.gen("x"));
    assert_eq!(c.value(0), &(&h * &x));
    assert!(c.value(1).is_zero());
    let d = c.intrinsic_biderivation().unwrap();
    assert_eq!(d.image(0), &x);
    assert!(d.image(1).is_zero());
    assert_eq!(d.matrix(), g.ad_matrix(&-x.clone()).unwrap());
    assert!(!c.is_involutive());

    for lambda in [rat(1, 1), rat(-3, 2), rat(5, 1)] {
        let (_, c) = preset("aff2_case3", Some(lambda.clone())).unwrap();
        assert!(c.value(0).is_zero());
        assert_eq!(c.value(1), &(&h * &x).scaled(&lambda));
        let d = c.intrinsic_biderivation().unwrap();
        assert!(d.image(0).is_zero());
        assert_eq!(d.image(1), &x.scaled(&lambda));
        assert_eq!(d.matrix(), g.ad_matrix(&h.scaled(&lambda)).unwrap());
        assert_eq!(d.eigenvalue_on(&(&h * &x)), Some(lambda.clone()));
    }
    assert!(matches!(preset("aff2_case3", Some(rat(0, 1))), Err(Error::Invalid(_))));
}

#[test]
fn coboundary_values_match_direct_expansion() {
    let g = sl2();
    let (_, c) = preset("sl2_standard", None).unwrap();
    for v in 0..3 {
        assert_eq!(c.value(v), &ad_on_wedge(&g, v, 0, 2));
    }
    let (x, h, y) = (g.gen("x"), g.gen("h"), g.gen("y"));
    assert_eq!(c.value(0), &(&x * &h));
    assert!(c.value(1).is_zero());
    assert_eq!(c.value(2), &-(&h * &y));

    let g3 = sl3();
    let (_, c3) = preset("sl3_standard", None).unwrap();
    for v in 0..8 {
        let mut want = Mv::zero(8);
        for (a, b) in [("x1", "y1"), ("x2", "y2"), ("x3", "y3")] {
            want += &ad_on_wedge(&g3, v, idx(&g3, a), idx(&g3, b));
        }
        assert_eq!(c3.value(v), &want);
    }
}

#[test]
fn zero_r_gives_zero_cobracket() {
    for g in [sl2(), sl3()] {
        let c = Cobracket::from_r(g.clone(), Mv::zero(g.dim())).unwrap();
        assert!(c.is_zero());
    }
}

#[test]
fn sl2_biderivation() {
    let (g, c) = preset("sl2_standard", None).unwrap();
    let d = c.intrinsic_biderivation().unwrap();
    let (x, h, y) = (g.gen("x"), g.gen("h"), g.gen("y"));
    assert_eq!(d.image(0), &x.scaled(&rat(-2, 1)));
    assert!(d.image(1).is_zero());
    assert_eq!(d.image(2), &y.scaled(&rat(2, 1)));
    // −𝒟 = [h, −]
    assert_eq!(d.matrix().scale(&rat(-1, 1)), g.ad_matrix(&h).unwrap());
    assert_eq!(d.h_r(), Some(&-h.clone()));
    assert!(d.adjoint_report().unwrap().holds);
    let xhy = &(&x * &h) * &y;
    assert_eq!(d.eigenvalue_on(&xhy), Some(rat(0, 1)));
}

#[test]
fn sl3_basis_and_h_r() {
    let g = sl3();
    let br = |a: &str, b: &str| g.bracket(&g.gen(a), &g.gen(b)).unwrap();
    assert_eq!(br("x1", "x2"), g.gen("x3"));
    assert_eq!(br("x1", "y1"), g.gen("h1"));
    assert_eq!(br("x2", "y2"), g.gen("h2"));
    assert_eq!(br("x3", "y3"), g.gen("h1") + g.gen("h2"));
    assert_eq!(br("h1", "x1"), g.gen("x1").scaled(&rat(2, 1)));
    assert_eq!(br("h2", "x1"), g.gen("x1").scaled(&rat(-1, 1)));

    let (_, c) = preset("sl3_standard", None).unwrap();
    let d = c.intrinsic_biderivation().unwrap();
    // [−,−](r) = h₁ + h₂ + h₃ with h₃ = h₁ + h₂, and −H_r = [−,−](r).
    let h3 = g.gen("h1") + g.gen("h2");
    let sum = g.gen("h1") + g.gen("h2") + h3;
    assert_eq!(d.h_r(), Some(&-sum));
    assert!(d.adjoint_report().unwrap().holds);
    let expect = [("x1", -2), ("x2", -2), ("x3", -4), ("h1", 0), ("h2", 0), ("y1", 2), ("y2", 2), ("y3", 4)];
    for (n, k) in expect {
        assert_eq!(d.image(idx(&g, n)), &g.gen(n).scaled(&rat(k, 1)), "{n}");
    }
}

#[test]
fn sl3_bracket_table() {
    let (g, c) = preset("sl3_standard", None).unwrap();
    let r = c.r().unwrap().clone();
    let w = |names: &[&str]| names.iter().fold(Mv::one(8), |acc, n| &acc * &g.gen(n));
    let h3 = g.gen("h1") + g.gen("h2");
    let br = |v: &Mv| g.bracket(&r, v).unwrap();
    assert!(br(&w(&["h1", "h2"])).is_zero());
    for i in 1..=2 {
        let (x, h, y) = (format!("x{i}"), format!("h{i}"), format!("y{i}"));
        assert_eq!(br(&w(&[&x, &y])), w(&[&x, &h, &y]).scaled(&rat(-2, 1)));
    }
    assert_eq!(br(&w(&["x1", "y2"])), -(&(&g.gen("x1") * &h3) * &g.gen("y2")));
    assert_eq!(br(&w(&["x2", "y1"])), -(&(&g.gen("x2") * &h3) * &g.gen("y1")));
    // The x₃∧y₃ row carries two extra terms beyond −2x₃∧h₃∧y₃.
    let x3h3y3 = &(&g.gen("x3") * &h3) * &g.gen("y3");
    let want = x3h3y3.scaled(&rat(-2, 1)) + w(&["x1", "x2", "y3"]).scaled(&rat(2, 1)) - w(&["x3", "y1", "y2"]).scaled(&rat(2, 1));
    assert_eq!(br(&w(&["x3", "y3"])), want);
    // One of the intermediate brackets behind that row.
    assert_eq!(g.bracket(&w(&["x2", "y2"]), &w(&["x3", "y3"])).unwrap(), w(&["x1", "x2", "y3"]) - w(&["x3", "y1", "y2"]));
}

#[test]
fn sl3_invariant_dimensions() {
    let (g, c) = preset("sl3_standard", None).unwrap();
    let d = c.intrinsic_biderivation().unwrap();
    let op = d.extension().materialize();
    let dims: Vec<usize> = (0..=8).map(|k| op.block(k).kernel().len()).collect();
    assert_eq!(op.block(2).cols(), 28);
    assert_eq!(op.block(3).cols(), 56);
    assert_eq!(dims[2], 6);
    assert_eq!(dims[3], 12);
    let w = |names: &[&str]| names.iter().fold(Mv::one(8), |acc, n| &acc * &g.gen(n));
    for v in [w(&["h1", "h2"]), w(&["x1", "y1"]), w(&["x2", "y2"]), w(&["x3", "y3"]), w(&["x1", "y2"]), w(&["x2", "y1"])] {
        assert_eq!(d.eigenvalue_on(&v), Some(rat(0, 1)), "{}", g.text(&v));
    }
}

#[test]
fn theorem_identities_for_all_presets() {
    for name in PRESET_NAMES {
        let (g, c) = preset(name, None).unwrap();
        let d = c.intrinsic_biderivation().unwrap();
        assert!(c.anticommutator_report(&d).holds, "{name}");
        assert!(d.bracket_derivation_report().holds, "{name}");
        assert!(d.coderivation_report(&c).holds, "{name}");
        if let Some(r) = d.adjoint_report() {
            assert!(r.holds, "{name}");
        }
        assert!(c.co_jacobi_witness().is_none());
        assert!(c.cocycle_witness().is_none());
        let ext = d.extension();
        assert!(gbv_core::gerstenhaber::checks::check_bracket_derivation(&g, &ext, &g.exterior_basis(), "∂_𝒟").holds, "{name}");
    }
}

#[test]
fn derivation_extension_examples() {
    let (g, c) = preset("aff2_trivial", None).unwrap();
    assert!(c.intrinsic_biderivation().unwrap().extension().materialize().is_zero());
    let (_, c) = preset("aff2_case3", Some(rat(3, 1))).unwrap();
    let hx = &g.gen("h") * &g.gen("x");
    assert_eq!(c.intrinsic_biderivation().unwrap().extension().apply(&hx), hx.scaled(&rat(3, 1)));
}

#[test]
fn invalid_cobrackets_are_rejected() {
    let g = sl2();
    let x = g.gen("x");
    let y = g.gen("y");
    let bad = Cobracket::new(g.clone(), vec![&x * &y, Mv::zero(3), Mv::zero(3)]);
    assert!(matches!(bad, Err(Error::IdentityFailure { .. })));
    assert!(matches!(preset("gl5", None), Err(Error::UnknownPreset(_))));
    let wrong_degree = Cobracket::new(g, vec![x.clone(), Mv::zero(3), Mv::zero(3)]);
    assert!(wrong_degree.is_err());
}

#[test]
fn matrices_and_json() {
    let m = |rows: &[&[i64]]| Matrix::from_i64(rows);
    let g = LieAlgebra::from_matrices(
        vec!["x".into(), "h".into(), "y".into()],
        &[m(&[&[0, 1], &[0, 0]]), m(&[&[1, 0], &[0, -1]]), m(&[&[0, 0], &[1, 0]])],
    )
    .unwrap();
    assert_eq!(g, sl2());

    let text = r#"{"dim": 3, "basis": ["x", "h", "y"],
        "brackets": [{"i": 1, "j": 0, "value": [{"k": 0, "coeff": "2"}]},
                     {"i": 0, "j": 2, "value": [{"k": 1, "coeff": "1"}]},
                     {"i": 1, "j": 2, "value": [{"k": 2, "coeff": "-2"}]}],
        "cobracket": {"r_matrix": [{"i": 0, "j": 2, "coeff": "1"}]}}"#;
    let (g2, c) = BialgebraSpec::parse(text).unwrap().build().unwrap();
    let (g3, c3) = preset("sl2_standard", None).unwrap();
    assert_eq!(g2, g3);
    assert_eq!(c.values(), c3.values());
}
