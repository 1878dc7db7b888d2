//! Schouten–Nijenhuis bracket on Λ•_A L, built from the generator rules
//! [X, Y] = [X, Y]_L and [X, f] = X(f) by the Leibniz rule
//! [a, bc] = [a, b]c + (−1)^{(|a|−1)|b|} b[a, c] and graded antisymmetry
//! [a, b] = −(−1)^{(|a|−1)(|b|−1)} [b, a].

use num_traits::One;

use super::GerstenhaberContext;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
enum Atom<S> {
    Scalar(S),
    Gen(usize),
}

impl<S: Scalar> Atom<S> {
    fn degree(&self) -> usize {
        match self {
            Atom::Scalar(_) => 0,
            Atom::Gen(_) => 1,
        }
    }
}

fn product<S: Scalar>(atoms: &[Atom<S>], dim: usize) -> Multivector<S> {
    let mut acc = Multivector::one(dim);
    for a in atoms {
        acc = match a {
            Atom::Scalar(c) => acc.scaled(c),
            Atom::Gen(i) => acc.wedge_blade(Blade::generator(*i)),
        };
    }
    acc
}

fn degree<S: Scalar>(atoms: &[Atom<S>]) -> usize {
    atoms.iter().map(Atom::degree).sum()
}

fn base_bracket<C: GerstenhaberContext>(ctx: &C, a: &Atom<C::Scalar>, b: &Atom<C::Scalar>) -> Multivector<C::Scalar> {
    let dim = ctx.rank();
    match (a, b) {
        (Atom::Gen(i), Atom::Gen(j)) => ctx.generator_bracket(*i, *j),
        (Atom::Gen(i), Atom::Scalar(f)) => Multivector::scalar(dim, ctx.anchor(*i, f)),
        (Atom::Scalar(f), Atom::Gen(j)) => Multivector::scalar(dim, -ctx.anchor(*j, f)),
        (Atom::Scalar(_), Atom::Scalar(_)) => Multivector::zero(dim),
    }
}

fn bracket_atoms<C: GerstenhaberContext>(ctx: &C, a: &[Atom<C::Scalar>], b: &[Atom<C::Scalar>]) -> Multivector<C::Scalar> {
    let dim = ctx.rank();
    if a.is_empty() || b.is_empty() {
        return Multivector::zero(dim);
    }
    let deg_a = degree(a);
    if b.len() >= 2 {
        // [a, b₁·rest] = [a, b₁]·rest + (−1)^{(|a|−1)|b₁|} b₁·[a, rest]
        let (b1, rest) = (&b[..1], &b[1..]);
        let first = &bracket_atoms(ctx, a, b1) * &product(rest, dim);
        let mut second = &product(b1, dim) * &bracket_atoms(ctx, a, rest);
        if (deg_a + 1) * degree(b1) % 2 == 1 {
            second = -second;
        }
        return first + second;
    }
    if a.len() >= 2 {
        // [a, b] = −(−1)^{(|a|−1)(|b|−1)} [b, a]
        let flipped = bracket_atoms(ctx, b, a);
        let deg_b = degree(b);
        let odd = (deg_a + 1) * (deg_b + 1) % 2 == 1;
        return if odd { flipped } else { -flipped };
    }
    base_bracket(ctx, &a[0], &b[0])
}

fn atoms_of<S: Scalar>(blade: Blade, c: &S, with_scalar: bool) -> Vec<Atom<S>> {
    let mut atoms = Vec::with_capacity(blade.degree() + 1);
    if with_scalar {
        atoms.push(Atom::Scalar(c.clone()));
    }
    atoms.extend(blade.indices().map(Atom::Gen));
    atoms
}

/// Bracket of two basis terms `c·e_S` and `d·e_T`.
pub(crate) fn bracket_terms<C: GerstenhaberContext>(
    ctx: &C,
    s: Blade,
    c: &C::Scalar,
    t: Blade,
    d: &C::Scalar,
) -> Multivector<C::Scalar> {
    if ctx.has_zero_anchor() {
        // Scalars are central: pull both coefficients out.
        let core = bracket_atoms(ctx, &atoms_of(s, c, false), &atoms_of(t, d, false));
        core.scaled(&c.mul_ref(d))
    } else {
        let a = if c.is_one() { atoms_of(s, c, false) } else { atoms_of(s, c, true) };
        let b = if d.is_one() { atoms_of(t, d, false) } else { atoms_of(t, d, true) };
        bracket_atoms(ctx, &a, &b)
    }
}

/// The Gerstenhaber bracket of `a` and `b`, extended bilinearly over terms.
pub fn schouten_bracket<C: GerstenhaberContext>(
    ctx: &C,
    a: &Multivector<C::Scalar>,
    b: &Multivector<C::Scalar>,
) -> Result<Multivector<C::Scalar>> {
    let dim = ctx.rank();
    for v in [a, b] {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch { left: dim, right: v.dim() });
        }
    }
    let mut out = Multivector::zero(dim);
    for (s, c) in a.terms() {
        for (t, d) in b.terms() {
            out += &bracket_terms(ctx, *s, c, *t, d);
        }
    }
    Ok(out)
}

/// `[p, −]` as an operator of degree |p| − 1.
pub struct Adjoint<'a, C: GerstenhaberContext> {
    ctx: &'a C,
    element: Multivector<C::Scalar>,
    shift: i32,
}

impl<'a, C: GerstenhaberContext> Adjoint<'a, C> {
    pub fn new(ctx: &'a C, element: Multivector<C::Scalar>) -> Result<Self> {
        let d = element.degree_or(1)?;
        Ok(Adjoint {
            ctx,
            element,
            shift: d as i32 - 1,
        })
    }

    pub fn element(&self) -> &Multivector<C::Scalar> {
        &self.element
    }
}

impl<C: GerstenhaberContext> crate::operator::GradedOperator<C::Scalar> for Adjoint<'_, C> {
    fn shift(&self) -> i32 {
        self.shift
    }

    fn apply(&self, v: &Multivector<C::Scalar>) -> Multivector<C::Scalar> {
        schouten_bracket(self.ctx, &self.element, v).expect("dimension checked at construction")
    }
}

/// Applies `[−,−]` to a bivector: e_i∧e_j ↦ [e_i, e_j], extended linearly.
pub fn bracket_contraction<C: GerstenhaberContext>(ctx: &C, v: &Multivector<C::Scalar>) -> Result<Multivector<C::Scalar>> {
    let dim = ctx.rank();
    let mut out = Multivector::zero(dim);
    for (b, c) in v.terms() {
        if b.degree() != 2 {
            return Err(Error::WrongDegree {
                expected: 2,
                found: b.degree() as i64,
            });
        }
        let mut idx = b.indices();
        let (i, j) = (idx.next().unwrap(), idx.next().unwrap());
        let x = Multivector::term(dim, Blade::generator(i), c.clone());
        let y = Multivector::generator(dim, j);
        out += &schouten_bracket(ctx, &x, &y)?;
    }
    Ok(out)
}
