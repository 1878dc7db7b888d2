//! Coefficient rings: exact rationals and multivariate polynomials over them.

mod parse;
mod poly;
mod rational;

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use parse::parse_poly;
pub use poly::{Exponent, Poly, MAX_VARS};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub(crate) use rational::is_negative;

/// A commutative coefficient ring for multivectors.
///
/// Every scalar can be written over ℚ as a finite sum of monomials; `expand`
/// exposes that decomposition so that operators can be materialized as
/// rational matrices. For `Rational` the only monomial is the constant one.
pub trait Scalar:
    Clone
    + Eq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    fn mul_ref(&self, other: &Self) -> Self;

    fn from_rational(q: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// Monomial decomposition over ℚ, in ascending monomial order.
    fn expand(&self) -> Vec<(Exponent, Rational)>;

    fn monomial(exp: Exponent, coeff: Rational) -> Self;

    /// Total degree; zero for constants and for the zero element.
    fn total_degree(&self) -> usize;

    /// Partial derivative with respect to variable `var`. Constants differentiate to zero.
    fn partial(&self, var: usize) -> Self;

    /// Text form used inside multivector text: rationals print bare, polynomials
    /// are parenthesized.
    fn coeff_text(&self) -> String;

    fn scale(&self, q: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(q.clone()))
    }
}

impl Scalar for Rational {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn expand(&self) -> Vec<(Exponent, Rational)> {
        if self.is_zero() {
            Vec::new()
        } else {
            vec![(Exponent::zero(), self.clone())]
        }
    }

    fn monomial(exp: Exponent, coeff: Rational) -> Self {
        assert!(exp.is_constant(), "rational scalars have no variables");
        coeff
    }

    fn total_degree(&self) -> usize {
        0
    }

    fn partial(&self, _var: usize) -> Self {
        Rational::zero()
    }

    fn coeff_text(&self) -> String {
        format_rational(self)
    }
}

impl Scalar for Poly {
    fn mul_ref(&self, other: &Self) -> Self {
        Poly::mul_ref(self, other)
    }

    fn from_rational(q: Rational) -> Self {
        Poly::constant(q)
    }

    fn expand(&self) -> Vec<(Exponent, Rational)> {
        self.terms().map(|(e, c)| (*e, c.clone())).collect()
    }

    fn monomial(exp: Exponent, coeff: Rational) -> Self {
        Poly::monomial(exp, coeff)
    }

    fn total_degree(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    fn partial(&self, var: usize) -> Self {
        self.derivative(var)
    }

    fn coeff_text(&self) -> String {
        format!("({self})")
    }
}
