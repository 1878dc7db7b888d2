//! BV operators generated by divergence data.
//!
//! For a divergence `div: L → A` the operator
//!
//! ```text
//! Δ(X₁∧⋯∧Xₙ) = Σ_{i<j} (−1)^{i+j} [Xᵢ,Xⱼ]∧X₁∧⋯X̂ᵢ⋯X̂ⱼ⋯∧Xₙ
//!            + Σᵢ (−1)^i div(Xᵢ) X₁∧⋯X̂ᵢ⋯∧Xₙ
//! ```
//!
//! is a BV operator generating the Gerstenhaber bracket; on a basis term
//! `c·e_{s₁}∧⋯∧e_{s_k}` it is evaluated with X₁ = c·e_{s₁} and Xᵢ = e_{sᵢ}.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use super::schouten::schouten_bracket;
use super::GerstenhaberContext;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::operator::GradedOperator;
use crate::scalar::{Exponent, Rational, Scalar};

/// A divergence operator L → A, given by its values on the frame generators
/// and an optional shift a₀ (div~(X) = div(X) + X(a₀)). On a general field
/// X = Σ fᵢ eᵢ it evaluates Σ fᵢ·div(eᵢ) + eᵢ(fᵢ) (+ fᵢ·eᵢ(a₀)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence<S: Scalar> {
    on_generators: Vec<S>,
    shift: Option<S>,
}

impl<S: Scalar> Divergence<S> {
    pub fn new(on_generators: Vec<S>) -> Self {
        Divergence {
            on_generators,
            shift: None,
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![S::zero(); rank])
    }

    /// Divergence shifted by `a0`.
    pub fn shifted(&self, a0: S) -> Self {
        let shift = match &self.shift {
            Some(s) => s.clone() + a0,
            None => a0,
        };
        Divergence {
            on_generators: self.on_generators.clone(),
            shift: (!shift.is_zero()).then_some(shift),
        }
    }

    pub fn on_generators(&self) -> &[S] {
        &self.on_generators
    }

    pub fn shift(&self) -> Option<&S> {
        self.shift.as_ref()
    }

    /// div of a degree-1 element.
    pub fn eval<C: GerstenhaberContext<Scalar = S>>(&self, ctx: &C, x: &Multivector<S>) -> Result<S> {
        let mut acc = S::zero();
        for (b, f) in x.terms() {
            if b.degree() != 1 {
                return Err(Error::WrongDegree {
                    expected: 1,
                    found: b.degree() as i64,
                });
            }
            let i = b.indices().next().unwrap();
            acc += &f.mul_ref(&self.on_generators[i]);
            acc += &ctx.anchor(i, f);
            if let Some(a0) = &self.shift {
                acc += &f.mul_ref(&ctx.anchor(i, a0));
            }
        }
        Ok(acc)
    }

    /// Values on generators, with the shift folded in: div~(eᵢ) = div(eᵢ) + eᵢ(a₀).
    pub fn effective_on_generators<C: GerstenhaberContext<Scalar = S>>(&self, ctx: &C) -> Vec<S> {
        (0..self.on_generators.len())
            .map(|i| {
                let mut v = self.on_generators[i].clone();
                if let Some(a0) = &self.shift {
                    v += &ctx.anchor(i, a0);
                }
                v
            })
            .collect()
    }
}

/// The BV operator of a divergence, with a memo of Δ on basis terms.
pub struct BvOperator<C: GerstenhaberContext> {
    ctx: C,
    div: Divergence<C::Scalar>,
    memo: Mutex<HashMap<(Blade, Exponent), Multivector<C::Scalar>>>,
}

impl<C: GerstenhaberContext + Clone> Clone for BvOperator<C> {
    fn clone(&self) -> Self {
        BvOperator::new(self.ctx.clone(), self.div.clone())
    }
}

impl<C: GerstenhaberContext> BvOperator<C> {
    pub fn new(ctx: C, div: Divergence<C::Scalar>) -> Self {
        assert_eq!(div.on_generators.len(), ctx.rank(), "divergence arity");
        BvOperator {
            ctx,
            div,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn context(&self) -> &C {
        &self.ctx
    }

    pub fn divergence(&self) -> &Divergence<C::Scalar> {
        &self.div
    }

    /// Δ on a basis term `c·e_S` by the two-sum formula.
    fn delta_term(&self, s: Blade, c: &C::Scalar) -> Multivector<C::Scalar> {
        let dim = self.ctx.rank();
        let idx: Vec<usize> = s.indices().collect();
        let k = idx.len();
        let mut out = Multivector::zero(dim);
        if k == 0 {
            return out;
        }
        let factor = |p: usize| -> Multivector<C::Scalar> {
            if p == 0 {
                Multivector::term(dim, Blade::generator(idx[0]), c.clone())
            } else {
                Multivector::generator(dim, idx[p])
            }
        };
        // X₁∧⋯ with the listed positions removed.
        let rest = |skip: &[usize]| -> Multivector<C::Scalar> {
            let mut acc = Multivector::one(dim);
            for p in 0..k {
                if !skip.contains(&p) {
                    acc = &acc * &factor(p);
                }
            }
            acc
        };
        for i in 0..k {
            for j in i + 1..k {
                let br = schouten_bracket(&self.ctx, &factor(i), &factor(j)).expect("same context");
                if br.is_zero() {
                    continue;
                }
                // positions are 1-based in the formula: (−1)^{(i+1)+(j+1)}
                let mut t = &br * &rest(&[i, j]);
                if (i + j) % 2 == 1 {
                    t = -t;
                }
                out += &t;
            }
        }
        for i in 0..k {
            let d = self.div.eval(&self.ctx, &factor(i)).expect("degree-1 factor");
            if d.is_zero() {
                continue;
            }
            let mut t = rest(&[i]).scaled(&d);
            if i % 2 == 0 {
                t = -t;
            }
            out += &t;
        }
        out
    }

    /// Δ(v), extended linearly over basis terms.
    pub fn delta(&self, v: &Multivector<C::Scalar>) -> Multivector<C::Scalar> {
        let mut out = Multivector::zero(self.ctx.rank());
        for (s, c) in v.terms() {
            if s.degree() == 0 {
                continue;
            }
            // Memoize on monomial basis terms; scale by the rational part afterwards.
            for (e, q) in c.expand() {
                let key = (*s, e);
                let cached = self.memo.lock().unwrap().get(&key).cloned();
                let base = match cached {
                    Some(v) => v,
                    None => {
                        let unit = C::Scalar::monomial(e, Rational::one());
                        let v = self.delta_term(*s, &unit);
                        self.memo.lock().unwrap().insert(key, v.clone());
                        v
                    }
                };
                out.add_scaled(&base, &C::Scalar::from_rational(q));
            }
        }
        out
    }

    /// [a, b]_Δ = (−1)^{|a|}Δ(ab) − (−1)^{|a|}Δ(a)b − aΔ(b) + aΔ(1)b.
    pub fn bracket_from_delta(&self, a: &Multivector<C::Scalar>, b: &Multivector<C::Scalar>) -> Result<Multivector<C::Scalar>> {
        let deg_a = a.degree_or(0)?;
        let ab = a.wedge(b)?;
        let one = Multivector::one(self.ctx.rank());
        let mut first = self.delta(&ab) - &self.delta(a) * b;
        if deg_a % 2 == 1 {
            first = -first;
        }
        // Δ(1) = 0 for these operators; the term is kept to match the formula.
        let unit_term = &(a * &self.delta(&one)) * b;
        Ok(first - a * &self.delta(b) + unit_term)
    }
}

impl<C: GerstenhaberContext> GradedOperator<C::Scalar> for BvOperator<C> {
    fn shift(&self) -> i32 {
        -1
    }

    fn apply(&self, v: &Multivector<C::Scalar>) -> Multivector<C::Scalar> {
        self.delta(v)
    }
}

/// Recovers the divergence from a candidate BV operator: div(eᵢ) = −Δ(eᵢ).
///
/// Before extraction the operator is checked on `probe` (a list of homogeneous
/// basis elements): Δ(1) = 0, Δ lowers degree by one, Δ² = 0, and Δ generates
/// the Gerstenhaber bracket on all probe pairs. The extracted divergence is then
/// checked against both divergence axioms on the probe's degree-1 elements.
pub fn divergence_from_delta<C: GerstenhaberContext>(
    ctx: &C,
    delta: &impl GradedOperator<C::Scalar>,
    probe: &[Multivector<C::Scalar>],
    scalar_probe: &[C::Scalar],
) -> Result<Divergence<C::Scalar>> {
    let dim = ctx.rank();
    let names = ctx.generator_names();
    let fail = |identity: &str, w: String| Error::IdentityFailure {
        identity: identity.into(),
        witness: w,
    };
    if delta.shift() != -1 {
        return Err(Error::WrongDegree {
            expected: -1,
            found: delta.shift() as i64,
        });
    }
    if !delta.apply(&Multivector::one(dim)).is_zero() {
        return Err(fail("Δ(1) = 0", "1".into()));
    }
    for v in probe {
        let dv = delta.apply(v);
        if !delta.apply(&dv).is_zero() {
            return Err(fail("Δ² = 0", v.to_text(&names)));
        }
    }
    // Bracket generation.
    for a in probe {
        let deg_a = a.degree_or(0)?;
        let da = delta.apply(a);
        for b in probe {
            let ab = a * b;
            let mut lhs = delta.apply(&ab) - &da * b;
            if deg_a % 2 == 1 {
                lhs = -lhs;
            }
            lhs = lhs - a * &delta.apply(b);
            let rhs = schouten_bracket(ctx, a, b)?;
            if lhs != rhs {
                return Err(fail(
                    "[a,b]_Δ = [a,b]",
                    format!("({}, {})", a.to_text(&names), b.to_text(&names)),
                ));
            }
        }
    }
    let mut values = Vec::with_capacity(dim);
    for i in 0..dim {
        let d = delta.apply(&Multivector::generator(dim, i));
        if d.terms().any(|(b, _)| b.degree() != 0) {
            return Err(fail("Δ(L) ⊆ A", names[i].clone()));
        }
        values.push(-d.coeff(Blade::UNIT));
    }
    let div = Divergence::new(values);
    // div must agree with −Δ on every probe field, including coefficient fields.
    for v in probe.iter().filter(|v| v.homogeneous_degree() == Some(1)) {
        let from_delta = -delta.apply(v).coeff(Blade::UNIT);
        if div.eval(ctx, v)? != from_delta {
            return Err(fail("div(aX) = a div X + X(a)", v.to_text(&names)));
        }
    }
    check_divergence_axioms(ctx, &div, scalar_probe)?;
    Ok(div)
}

/// Checks div[X,Y] = X(div Y) − Y(div X) on generator pairs scaled by probe
/// scalars, and div(aX) = a·div X + X(a) for generators X and probe scalars a.
pub fn check_divergence_axioms<C: GerstenhaberContext>(ctx: &C, div: &Divergence<C::Scalar>, scalar_probe: &[C::Scalar]) -> Result<()> {
    let dim = ctx.rank();
    let names = ctx.generator_names();
    let one = C::Scalar::one();
    let mut scalars: Vec<C::Scalar> = vec![one];
    scalars.extend(scalar_probe.iter().cloned());
    for i in 0..dim {
        for f in &scalars {
            let x = Multivector::term(dim, Blade::generator(i), f.clone());
            let lhs = div.eval(ctx, &x)?;
            let rhs = f.mul_ref(&div.eval(ctx, &Multivector::generator(dim, i))?) + ctx.anchor(i, f);
            if lhs != rhs {
                return Err(Error::IdentityFailure {
                    identity: "div(aX) = a div X + X(a)".into(),
                    witness: format!("X = {}, a = {:?}", names[i], f),
                });
            }
        }
        for j in 0..dim {
            for f in &scalars {
                let x = Multivector::term(dim, Blade::generator(i), f.clone());
                let y = Multivector::generator(dim, j);
                let xy = schouten_bracket(ctx, &x, &y)?;
                let lhs = div.eval(ctx, &xy)?;
                let div_x = div.eval(ctx, &x)?;
                let div_y = div.eval(ctx, &y)?;
                // X(g) for X = f·eᵢ is f·eᵢ(g); Y = e_j.
                let rhs = f.mul_ref(&ctx.anchor(i, &div_y)) - ctx.anchor(j, &div_x);
                if lhs != rhs {
                    return Err(Error::IdentityFailure {
                        identity: "div[X,Y] = X(div Y) − Y(div X)".into(),
                        witness: format!("X = {:?}·{}, Y = {}", f, names[i], names[j]),
                    });
                }
            }
        }
    }
    Ok(())
}
