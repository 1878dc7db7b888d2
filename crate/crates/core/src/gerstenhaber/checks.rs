//! Exhaustive checkers for the Gerstenhaber and BV axioms on finite lists of
//! homogeneous elements. Failures are report content, never errors.

use serde::{Deserialize, Serialize};

use super::schouten::schouten_bracket;
use super::GerstenhaberContext;
use crate::exterior::Multivector;
use crate::operator::GradedOperator;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub identity: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass(identity: impl Into<String>) -> Self {
        CheckReport {
            identity: identity.into(),
            holds: true,
            witness: None,
        }
    }

    pub fn fail(identity: impl Into<String>, inputs: Vec<String>, lhs: String, rhs: String) -> Self {
        CheckReport {
            identity: identity.into(),
            holds: false,
            witness: Some(Witness { inputs, lhs, rhs }),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    /// One-line summary, e.g. `PASS  Δ² = 0`.
    pub fn line(&self) -> String {
        let mut s = format!("{}  {}", if self.holds { "PASS" } else { "FAIL" }, self.identity);
        if let Some(w) = &self.witness {
            s.push_str(&format!("  at ({}): {} ≠ {}", w.inputs.join(", "), w.lhs, w.rhs));
        }
        s
    }
}

fn sign<S: Scalar>(odd: bool, v: Multivector<S>) -> Multivector<S> {
    if odd {
        -v
    } else {
        v
    }
}

fn deg<S: Scalar>(v: &Multivector<S>) -> usize {
    v.homogeneous_degree().unwrap_or(0)
}

/// Graded Jacobi: [a,[b,c]] = [[a,b],c] + (−1)^{(|a|−1)(|b|−1)} [b,[a,c]].
pub fn check_graded_jacobi<C: GerstenhaberContext>(ctx: &C, elems: &[Multivector<C::Scalar>]) -> CheckReport {
    let id = "graded Jacobi";
    let names = ctx.generator_names();
    let br = |a: &Multivector<C::Scalar>, b: &Multivector<C::Scalar>| schouten_bracket(ctx, a, b).expect("same context");
    for a in elems {
        for b in elems {
            let ab = br(a, b);
            let odd = (deg(a) + 1) * (deg(b) + 1) % 2 == 1;
            for c in elems {
                let lhs = br(a, &br(b, c));
                let rhs = br(&ab, c) + sign(odd, br(b, &br(a, c)));
                if lhs != rhs {
                    return CheckReport::fail(
                        id,
                        vec![a.to_text(&names), b.to_text(&names), c.to_text(&names)],
                        lhs.to_text(&names),
                        rhs.to_text(&names),
                    );
                }
            }
        }
    }
    CheckReport::pass(id)
}

/// Leibniz rule of the bracket: [a,bc] = [a,b]c + (−1)^{(|a|−1)|b|} b[a,c].
pub fn check_bracket_leibniz_rule<C: GerstenhaberContext>(ctx: &C, elems: &[Multivector<C::Scalar>]) -> CheckReport {
    let id = "[a,bc] = [a,b]c + (−1)^{(|a|−1)|b|} b[a,c]";
    let names = ctx.generator_names();
    let br = |a: &Multivector<C::Scalar>, b: &Multivector<C::Scalar>| schouten_bracket(ctx, a, b).expect("same context");
    for a in elems {
        for b in elems {
            let ab = br(a, b);
            let odd = (deg(a) + 1) * deg(b) % 2 == 1;
            for c in elems {
                let lhs = br(a, &(b * c));
                let rhs = &ab * c + sign(odd, b * &br(a, c));
                if lhs != rhs {
                    return CheckReport::fail(
                        id,
                        vec![a.to_text(&names), b.to_text(&names), c.to_text(&names)],
                        lhs.to_text(&names),
                        rhs.to_text(&names),
                    );
                }
            }
        }
    }
    CheckReport::pass(id)
}

/// Graded antisymmetry: [a,b] = −(−1)^{(|a|−1)(|b|−1)} [b,a].
pub fn check_antisymmetry<C: GerstenhaberContext>(ctx: &C, elems: &[Multivector<C::Scalar>]) -> CheckReport {
    let id = "[a,b] = −(−1)^{(|a|−1)(|b|−1)} [b,a]";
    let names = ctx.generator_names();
    for a in elems {
        for b in elems {
            let lhs = schouten_bracket(ctx, a, b).expect("same context");
            let odd = (deg(a) + 1) * (deg(b) + 1) % 2 == 1;
            let rhs = sign(!odd, schouten_bracket(ctx, b, a).expect("same context"));
            if lhs != rhs {
                return CheckReport::fail(id, vec![a.to_text(&names), b.to_text(&names)], lhs.to_text(&names), rhs.to_text(&names));
            }
        }
    }
    CheckReport::pass(id)
}

/// op² = 0 on every element.
pub fn check_square_zero<S: Scalar>(op: &impl GradedOperator<S>, elems: &[Multivector<S>], names: &[String], label: &str) -> CheckReport {
    let id = format!("{label}² = 0");
    for v in elems {
        let w = op.apply(&op.apply(v));
        if !w.is_zero() {
            return CheckReport::fail(id, vec![v.to_text(names)], w.to_text(names), "0".into());
        }
    }
    CheckReport::pass(id)
}

/// Product Leibniz rule for an operator of degree s: op(ab) = op(a)b + (−1)^{s|a|} a op(b).
pub fn check_product_derivation<S: Scalar>(op: &impl GradedOperator<S>, elems: &[Multivector<S>], names: &[String], label: &str) -> CheckReport {
    let s = op.shift().rem_euclid(2) as usize;
    let id = if s == 1 {
        format!("{label}(ab) = {label}(a)b + (−1)^{{|a|}} a{label}(b)")
    } else {
        format!("{label}(ab) = {label}(a)b + a{label}(b)")
    };
    for a in elems {
        let da = op.apply(a);
        let odd = s * deg(a) % 2 == 1;
        for b in elems {
            let lhs = op.apply(&(a * b));
            let rhs = &da * b + sign(odd, a * &op.apply(b));
            if lhs != rhs {
                return CheckReport::fail(id, vec![a.to_text(names), b.to_text(names)], lhs.to_text(names), rhs.to_text(names));
            }
        }
    }
    CheckReport::pass(id)
}

/// Bracket Leibniz rule for an operator of degree s: op[a,b] = [op a,b] + (−1)^{s(|a|−1)} [a,op b].
pub fn check_bracket_derivation<C: GerstenhaberContext>(
    ctx: &C,
    op: &impl GradedOperator<C::Scalar>,
    elems: &[Multivector<C::Scalar>],
    label: &str,
) -> CheckReport {
    let s = op.shift().rem_euclid(2) as usize;
    let id = if s == 1 {
        format!("{label}[a,b] = [{label}a,b] + (−1)^{{|a|−1}} [a,{label}b]")
    } else {
        format!("{label}[a,b] = [{label}a,b] + [a,{label}b]")
    };
    let names = ctx.generator_names();
    let br = |a: &Multivector<C::Scalar>, b: &Multivector<C::Scalar>| schouten_bracket(ctx, a, b).expect("same context");
    for a in elems {
        let da = op.apply(a);
        let odd = s * (deg(a) + 1) % 2 == 1;
        for b in elems {
            let lhs = op.apply(&br(a, b));
            let rhs = br(&da, b) + sign(odd, br(a, &op.apply(b)));
            if lhs != rhs {
                return CheckReport::fail(id, vec![a.to_text(&names), b.to_text(&names)], lhs.to_text(&names), rhs.to_text(&names));
            }
        }
    }
    CheckReport::pass(id)
}

/// Result of the strong-differential test: degree +1, square zero, and a
/// derivation of both the product and the bracket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongDifferentialReport {
    pub degree: CheckReport,
    pub square_zero: CheckReport,
    pub product_leibniz: CheckReport,
    pub bracket_leibniz: CheckReport,
}

impl StrongDifferentialReport {
    pub fn holds(&self) -> bool {
        self.reports().iter().all(|r| r.holds)
    }

    pub fn reports(&self) -> [&CheckReport; 4] {
        [&self.degree, &self.square_zero, &self.product_leibniz, &self.bracket_leibniz]
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.reports().into_iter().find(|r| !r.holds)
    }
}

pub fn is_strong_differential<C: GerstenhaberContext>(
    d: &impl GradedOperator<C::Scalar>,
    ctx: &C,
    elems: &[Multivector<C::Scalar>],
) -> StrongDifferentialReport {
    let names = ctx.generator_names();
    if d.shift() != 1 {
        let skipped = |what: &str| CheckReport {
            identity: format!("{what} (not evaluated: operator has degree {})", d.shift()),
            holds: false,
            witness: None,
        };
        return StrongDifferentialReport {
            degree: CheckReport::fail("deg d = +1", vec![], d.shift().to_string(), "1".into()),
            square_zero: skipped("d² = 0"),
            product_leibniz: skipped("product Leibniz"),
            bracket_leibniz: skipped("bracket Leibniz"),
        };
    }
    StrongDifferentialReport {
        degree: CheckReport::pass("deg d = +1"),
        square_zero: check_square_zero(d, elems, &names, "d"),
        product_leibniz: check_product_derivation(d, elems, &names, "d"),
        bracket_leibniz: check_bracket_derivation(ctx, d, elems, "d"),
    }
}

/// The seven-term identity for a degree −1 operator Δ with Δ(1) = 0:
///
/// Δ(abc) − Δ(ab)c + Δ(a)bc − (−1)^{|a|} aΔ(bc) − (−1)^{(|a|+1)|b|} bΔ(ac)
///   + (−1)^{|a|} aΔ(b)c + (−1)^{|a|+|b|} abΔ(c) = 0.
pub fn check_seven_term<S: Scalar>(delta: &impl GradedOperator<S>, elems: &[Multivector<S>], names: &[String]) -> CheckReport {
    let id = "seven-term identity";
    let d = |v: &Multivector<S>| delta.apply(v);
    for a in elems {
        let pa = deg(a);
        let da = d(a);
        for b in elems {
            let pb = deg(b);
            let ab = a * b;
            let dab = d(&ab);
            let db = d(b);
            for c in elems {
                let bc = b * c;
                let ac = a * c;
                let total = d(&(&ab * c)) - &dab * c + &(&da * b) * c - sign(pa % 2 == 1, a * &d(&bc))
                    - sign((pa + 1) * pb % 2 == 1, b * &d(&ac))
                    + sign(pa % 2 == 1, &(a * &db) * c)
                    + sign((pa + pb) % 2 == 1, &ab * &d(c));
                if !total.is_zero() {
                    return CheckReport::fail(
                        id,
                        vec![a.to_text(names), b.to_text(names), c.to_text(names)],
                        total.to_text(names),
                        "0".into(),
                    );
                }
            }
        }
    }
    CheckReport::pass(id)
}

/// [a,b]_Δ = [a,b] on all pairs.
pub fn check_bracket_generation<C: GerstenhaberContext>(
    bv: &super::BvOperator<C>,
    elems: &[Multivector<C::Scalar>],
) -> CheckReport {
    let id = "[a,b]_Δ = [a,b]";
    let ctx = bv.context();
    let names = ctx.generator_names();
    for a in elems {
        for b in elems {
            let lhs = bv.bracket_from_delta(a, b).expect("homogeneous inputs");
            let rhs = schouten_bracket(ctx, a, b).expect("same context");
            if lhs != rhs {
                return CheckReport::fail(id, vec![a.to_text(&names), b.to_text(&names)], lhs.to_text(&names), rhs.to_text(&names));
            }
        }
    }
    CheckReport::pass(id)
}

/// Equality of two operators on every element.
pub fn check_operator_equality<S: Scalar>(
    id: &str,
    lhs: &impl GradedOperator<S>,
    rhs: &impl GradedOperator<S>,
    elems: &[Multivector<S>],
    names: &[String],
) -> CheckReport {
    for v in elems {
        let l = lhs.apply(v);
        let r = rhs.apply(v);
        if l != r {
            return CheckReport::fail(id, vec![v.to_text(names)], l.to_text(names), r.to_text(names));
        }
    }
    CheckReport::pass(id)
}
