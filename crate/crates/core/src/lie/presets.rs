use num_traits::Zero;

use super::{Cobracket, LieAlgebra};
use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::linalg::Matrix;
use crate::scalar::{format_rational, Rational};

pub const PRESET_NAMES: [&str; 5] = ["aff2_trivial", "aff2_case2", "aff2_case3", "sl2_standard", "sl3_standard"];

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// aff₂ with basis {h, x} and [h, x] = x.
pub fn aff2() -> LieAlgebra {
    let x = Multivector::generator(2, 1);
    LieAlgebra::new(names(&["h", "x"]), &[(0, 1, x)]).expect("aff2 is a Lie algebra")
}

/// sl₂ with basis {x, h, y}: [h,x] = 2x, [x,y] = h, [h,y] = −2y.
pub fn sl2() -> LieAlgebra {
    let g = |i| Multivector::<Rational>::generator(3, i);
    LieAlgebra::new(
        names(&["x", "h", "y"]),
        &[(1, 0, g(0).scaled(&q(2))), (0, 2, g(1)), (1, 2, g(2).scaled(&q(-2)))],
    )
    .expect("sl2 is a Lie algebra")
}

fn unit(i: usize, j: usize, c: i64) -> Matrix {
    let mut m = Matrix::zeros(3, 3);
    m.set(i, j, q(c));
    m
}

/// sl₃ with basis x₁ = E₁₂, x₂ = E₂₃, x₃ = E₁₃, h₁ = E₁₁ − E₂₂, h₂ = E₂₂ − E₃₃,
/// y₁ = E₂₁, y₂ = E₃₂, y₃ = E₃₁.
pub fn sl3() -> LieAlgebra {
    let mats = [
        unit(0, 1, 1),
        unit(1, 2, 1),
        unit(0, 2, 1),
        unit(0, 0, 1).add(&unit(1, 1, -1)).unwrap(),
        unit(1, 1, 1).add(&unit(2, 2, -1)).unwrap(),
        unit(1, 0, 1),
        unit(2, 1, 1),
        unit(2, 0, 1),
    ];
    LieAlgebra::from_matrices(names(&["x1", "x2", "x3", "h1", "h2", "y1", "y2", "y3"]), &mats).expect("sl3 is a Lie algebra")
}

fn wedge2(g: &LieAlgebra, a: &str, b: &str) -> Multivector<Rational> {
    &g.gen(a) * &g.gen(b)
}

/// Loads a named bialgebra. `lambda` applies to `aff2_case3` only (default 1).
pub fn preset(name: &str, lambda: Option<Rational>) -> Result<(LieAlgebra, Cobracket)> {
    match name {
        "aff2_trivial" => {
            let g = aff2();
            Ok((g.clone(), Cobracket::zero(g)))
        }
        "aff2_case2" => {
            let g = aff2();
            let r = wedge2(&g, "h", "x");
            Ok((g.clone(), Cobracket::from_r(g, r)?))
        }
        "aff2_case3" => {
            let lambda = lambda.unwrap_or_else(|| q(1));
            if lambda.is_zero() {
                return Err(Error::Invalid("aff2_case3 requires λ ≠ 0".into()));
            }
            let g = aff2();
            let dx = wedge2(&g, "h", "x").scaled(&lambda);
            let c = Cobracket::new(g.clone(), vec![Multivector::zero(2), dx])?;
            Ok((g, c))
        }
        "sl2_standard" => {
            let g = sl2();
            let r = wedge2(&g, "x", "y");
            Ok((g.clone(), Cobracket::from_r(g, r)?))
        }
        "sl3_standard" => {
            let g = sl3();
            let r = wedge2(&g, "x1", "y1") + wedge2(&g, "x2", "y2") + wedge2(&g, "x3", "y3");
            Ok((g.clone(), Cobracket::from_r(g, r)?))
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

/// Display label, e.g. `aff2_case3(λ=1/2)`.
pub fn preset_label(name: &str, lambda: Option<&Rational>) -> String {
    match (name, lambda) {
        ("aff2_case3", Some(l)) => format!("aff2_case3(λ={})", format_rational(l)),
        ("aff2_case3", None) => "aff2_case3(λ=1)".into(),
        _ => name.to_string(),
    }
}
