use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, is_negative, Rational};

pub const MAX_VARS: usize = 8;

/// Dense exponent vector of a monomial in at most [`MAX_VARS`] variables.
///
/// Ordered by total degree, then lexicographically on the exponent array, so the
/// largest monomial of a given degree is the one with the highest power of x₁.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exponent(pub [u16; MAX_VARS]);

impl Exponent {
    pub const fn zero() -> Self {
        Exponent([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Exponent(e)
    }

    pub fn from_slice(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Exponent(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Exponent(e)
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.0.iter().rposition(|&k| k > 0).map_or(0, |i| i + 1)
    }

    /// All exponent vectors in `n` variables with total degree at most `max_deg`, ascending.
    pub fn all_up_to(n: usize, max_deg: usize) -> Vec<Exponent> {
        fn rec(n: usize, i: usize, left: usize, cur: &mut [u16; MAX_VARS], out: &mut Vec<Exponent>) {
            if i == n {
                out.push(Exponent(*cur));
                return;
            }
            for k in 0..=left {
                cur[i] = k as u16;
                rec(n, i + 1, left - k, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        rec(n, 0, max_deg, &mut [0; MAX_VARS], &mut out);
        out.sort();
        out
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..self.support_len().max(1)])
    }
}

/// Names used when printing: x, y, z when only the first three variables occur,
/// otherwise x1..x8.
pub(crate) fn var_names(short: bool) -> [&'static str; MAX_VARS] {
    if short {
        ["x", "y", "z", "x4", "x5", "x6", "x7", "x8"]
    } else {
        ["x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"]
    }
}

fn write_monomial(e: &Exponent, names: &[&str], out: &mut String) {
    let mut first = true;
    for (i, &k) in e.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(names[i]);
        if k > 1 {
            out.push('^');
            out.push_str(&k.to_string());
        }
    }
}

/// Sparse polynomial with rational coefficients. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(Exponent::zero(), c)
    }

    pub fn monomial(exp: Exponent, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Poly { terms }
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Exponent::var(i), Rational::one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff.clone());
            }
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Exponent::degree).max()
    }

    /// Number of variables actually used (highest index plus one).
    pub fn num_vars_used(&self) -> usize {
        self.terms.keys().map(Exponent::support_len).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coeff(&self, exp: &Exponent) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut d = *e;
            d.0[var] -= 1;
            out.add_term(d, &(c * Rational::from_integer(k.into())));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn mul_ref(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), &(c1 * c2));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                for _ in 0..k {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a Poly> for Poly {
    fn add_assign(&mut self, rhs: &'a Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        self.mul_ref(&rhs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = var_names(self.num_vars_used() <= 3);
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if e.is_constant() {
                out.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_rational(&abs));
                    out.push('*');
                }
                write_monomial(e, &names, &mut out);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn display_order() {
        let p = x() * x() + y() * y();
        assert_eq!(p.to_string(), "x^2 + y^2");
        let q = Poly::constant(rat(3, 2)) - x() * y() * Poly::constant(rat(2, 1));
        assert_eq!(q.to_string(), "-2*x*y + 3/2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!((-x()).to_string(), "-x");
    }

    #[test]
    fn no_zero_terms_after_cancellation() {
        let p = x() + y();
        let q = p.clone() - p;
        assert!(q.is_zero());
        assert_eq!(q.num_terms(), 0);
        assert_eq!(q.degree(), None);
    }

    #[test]
    fn derivative_and_degree() {
        let p = x().pow(3) * y() + x() * Poly::constant(rat(5, 1));
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.derivative(0), x().pow(2) * y() * Poly::constant(rat(3, 1)) + Poly::constant(rat(5, 1)));
        assert_eq!(p.derivative(1), x().pow(3));
        assert!(Poly::one().derivative(0).is_zero());
    }

    #[test]
    fn exponent_enumeration() {
        let all = Exponent::all_up_to(2, 3);
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Exponent::all_up_to(3, 2).len(), 10);
    }
}
