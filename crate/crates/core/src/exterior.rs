//! Sparse elements of the exterior algebra Λ•V over a coefficient ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_poly, parse_rational, Poly, Rational, Scalar};

pub const MAX_DIM: usize = 64;

/// A basis monomial e_{i₁}∧…∧e_{i_k} with i₁ < … < i_k, stored as a bitset.
///
/// Repeated generators cannot be represented, so e_i ∧ e_i = 0 is built in.
/// Blades are ordered by degree, then lexicographically on the index sequence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(pub u64);

impl Blade {
    pub const UNIT: Blade = Blade(0);

    pub fn generator(i: usize) -> Blade {
        assert!(i < MAX_DIM);
        Blade(1 << i)
    }

    /// Blade from indices in any order; `None` on a repeated index.
    pub fn from_indices(idx: &[usize]) -> Option<Blade> {
        let mut bits = 0u64;
        for &i in idx {
            assert!(i < MAX_DIM);
            if bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(Blade(bits))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << i))
    }

    /// Sign and blade of `self ∧ other`, or `None` when they share a generator.
    ///
    /// The sign is the parity of the number of pairs (s, t), s ∈ self, t ∈ other,
    /// with s > t: exactly the transpositions needed to merge the concatenated
    /// index lists into increasing order.
    pub fn wedge(self, other: Blade) -> Option<(bool, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut t = other.0;
        while t != 0 {
            let i = t.trailing_zeros();
            t &= t - 1;
            inversions += (self.0 >> i >> 1).count_ones();
        }
        Some((inversions % 2 == 1, Blade(self.0 | other.0)))
    }

    /// All blades of degree `k` in `dim` generators, in canonical order.
    pub fn all_of_degree(dim: usize, k: usize) -> Vec<Blade> {
        fn rec(dim: usize, start: usize, k: usize, bits: u64, out: &mut Vec<Blade>) {
            if k == 0 {
                out.push(Blade(bits));
                return;
            }
            for i in start..dim {
                if dim - i < k {
                    break;
                }
                rec(dim, i + 1, k - 1, bits | (1 << i), out);
            }
        }
        let mut out = Vec::new();
        if k <= dim {
            rec(dim, 0, k, 0, &mut out);
        }
        out
    }

    /// Every blade in `dim` generators, grouped by degree.
    pub fn all(dim: usize) -> Vec<Blade> {
        (0..=dim).flat_map(|k| Blade::all_of_degree(dim, k)).collect()
    }

    pub fn name(self, names: &[String]) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        self.indices()
            .map(|i| names[i].as_str())
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{:?}", self.indices().collect::<Vec<_>>())
    }
}

/// Element of Λ•V (V of rank `dim`) with coefficients in `S`, in canonical
/// sparse form: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector<S: Scalar> {
    dim: usize,
    terms: BTreeMap<Blade, S>,
}

/// Result of a homogeneity query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(usize),
    Inhomogeneous,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "exterior dimension {dim} > {MAX_DIM}");
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, S::one())
    }

    pub fn scalar(dim: usize, c: S) -> Self {
        Self::term(dim, Blade::UNIT, c)
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        assert!(i < dim, "generator {i} out of range for dimension {dim}");
        Self::term(dim, Blade::generator(i), S::one())
    }

    pub fn blade(dim: usize, b: Blade) -> Self {
        Self::term(dim, b, S::one())
    }

    pub fn term(dim: usize, b: Blade, c: S) -> Self {
        let mut v = Self::zero(dim);
        v.add_term(b, c);
        v
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Blade, S)>) -> Self {
        let mut v = Self::zero(dim);
        for (b, c) in terms {
            v.add_term(b, c);
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Blade, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: Blade) -> S {
        self.terms.get(&b).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, b: Blade, c: S) {
        debug_assert!(b.0 >> self.dim == 0 || self.dim == MAX_DIM);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    /// Adds `c · other` into `self`.
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (b, x) in &other.terms {
            self.add_term(*b, x.mul_ref(c));
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim);
        out.add_scaled(self, c);
        out
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(|b| b.degree());
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    /// Common degree of all terms (`Some(0)` is not reported for the zero element;
    /// zero is homogeneous of every degree and yields `None`).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.homogeneity() {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }

    /// Degree of a homogeneous element, with zero treated as degree `fallback`.
    pub fn degree_or(&self, fallback: usize) -> Result<usize> {
        match self.homogeneity() {
            Homogeneity::Zero => Ok(fallback),
            Homogeneity::Degree(d) => Ok(d),
            Homogeneity::Inhomogeneous => Err(Error::Inhomogeneous),
        }
    }

    /// Projection onto Λᵏ.
    pub fn contract_degree(&self, k: usize) -> Self {
        Multivector {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == k)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        } else {
            Ok(())
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.wedge_unchecked(other))
    }

    pub(crate) fn wedge_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                if let Some((neg, b)) = b1.wedge(*b2) {
                    let c = c1.mul_ref(c2);
                    out.add_term(b, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// `self ∧ e_b` for a single blade.
    pub fn wedge_blade(&self, b: Blade) -> Self {
        let mut out = Self::zero(self.dim);
        for (b1, c1) in &self.terms {
            if let Some((neg, w)) = b1.wedge(b) {
                out.add_term(w, if neg { -c1.clone() } else { c1.clone() });
            }
        }
        out
    }

    /// `e_b ∧ self` for a single blade.
    pub fn blade_wedge(&self, b: Blade) -> Self {
        let mut out = Self::zero(self.dim);
        for (b1, c1) in &self.terms {
            if let Some((neg, w)) = b.wedge(*b1) {
                out.add_term(w, if neg { -c1.clone() } else { c1.clone() });
            }
        }
        out
    }

    /// Checks a ∧ b = (−1)^{pq} b ∧ a for homogeneous a, b of degrees p, q.
    pub fn super_commutativity_check(&self, other: &Self) -> Result<bool> {
        self.check_dim(other)?;
        let p = self.degree_or(0)?;
        let q = other.degree_or(0)?;
        let ab = self.wedge_unchecked(other);
        let mut ba = other.wedge_unchecked(self);
        if p * q % 2 == 1 {
            ba = -ba;
        }
        Ok(ab == ba)
    }

    /// Applies `f` to each coefficient, dropping terms that become zero.
    pub fn map_coeffs(&self, mut f: impl FnMut(&S) -> S) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    /// Text form with the given generator names: terms in canonical order joined
    /// by ` + `, each `coeff * name^name`, degree-0 terms printing as the bare coefficient.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(b, c)| {
                if *b == Blade::UNIT {
                    c.coeff_text()
                } else {
                    format!("{} * {}", c.coeff_text(), b.name(names))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<S: Scalar> std::ops::Add for Multivector<S> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl<S: Scalar> std::ops::AddAssign<&Multivector<S>> for Multivector<S> {
    fn add_assign(&mut self, rhs: &Multivector<S>) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for (b, c) in &rhs.terms {
            self.add_term(*b, c.clone());
        }
    }
}

impl<S: Scalar> std::ops::Sub for Multivector<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> std::ops::Neg for Multivector<S> {
    type Output = Self;

    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

/// Wedge product; panics on a dimension mismatch. Use [`Multivector::wedge`] for a checked version.
impl<S: Scalar> std::ops::Mul for &Multivector<S> {
    type Output = Multivector<S>;

    fn mul(self, rhs: &Multivector<S>) -> Multivector<S> {
        self.wedge(rhs).expect("wedge of multivectors with different dimensions")
    }
}

impl<S: Scalar> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.dim);
        write!(f, "{}", self.to_text(&names))
    }
}

/// `e1, e2, …` (one-based).
pub fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

/// Parses the text form produced by [`Multivector::to_text`].
pub fn parse_multivector<S: ParseCoeff>(text: &str, names: &[String]) -> Result<Multivector<S>> {
    let dim = names.len();
    let mut out = Multivector::zero(dim);
    let text = text.trim();
    if text == "0" {
        return Ok(out);
    }
    let mut offset = 0;
    for piece in split_top_level(text, " + ") {
        let (coeff, blade) = match piece.rfind(" * ") {
            Some(k) if !piece[k..].contains(')') => (&piece[..k], Some(&piece[k + 3..])),
            _ => (piece, None),
        };
        let c = S::parse_coeff(coeff.trim()).map_err(|e| shift_pos(e, offset))?;
        let b = match blade {
            None => Blade::UNIT,
            Some(bs) => {
                let mut idx = Vec::new();
                for name in bs.trim().split('^') {
                    let i = names.iter().position(|n| n == name).ok_or(Error::Parse {
                        pos: offset,
                        msg: format!("unknown generator `{name}`"),
                    })?;
                    idx.push(i);
                }
                let b = Blade::from_indices(&idx).ok_or(Error::Parse {
                    pos: offset,
                    msg: "repeated generator".into(),
                })?;
                // Non-canonical order carries the merge sign.
                let mut sign_src = Blade::UNIT;
                let mut neg = false;
                for &i in &idx {
                    let (n, w) = sign_src.wedge(Blade::generator(i)).unwrap();
                    neg ^= n;
                    sign_src = w;
                }
                if neg {
                    out.add_term(b, -c);
                    offset += piece.len() + 3;
                    continue;
                }
                b
            }
        };
        out.add_term(b, c);
        offset += piece.len() + 3;
    }
    Ok(out)
}

fn shift_pos(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        other => other,
    }
}

fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            out.push(&s[start..i]);
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}

/// Coefficient parsing for the multivector text form.
pub trait ParseCoeff: Scalar {
    fn parse_coeff(s: &str) -> Result<Self>;
}

impl ParseCoeff for Rational {
    fn parse_coeff(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

impl ParseCoeff for Poly {
    fn parse_coeff(s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        parse_poly(inner, crate::scalar::MAX_VARS).map_err(|e| shift_pos(e, 1))
    }
}

/// Convenience: a rational multivector from `(indices, coefficient)` pairs; the
/// indices may be in any order and the merge sign is applied.
pub fn mv_from(dim: usize, terms: &[(&[usize], Rational)]) -> Multivector<Rational> {
    let mut out = Multivector::zero(dim);
    for (idx, c) in terms {
        let mut acc = Multivector::<Rational>::one(dim);
        for &i in idx.iter() {
            acc = acc.wedge_blade(Blade::generator(i));
        }
        out.add_scaled(&acc, c);
    }
    out
}

impl<S: Scalar> Multivector<S> {
    /// `c · e_{i₁} ∧ … ∧ e_{i_k}` for indices in any order.
    pub fn wedge_of(dim: usize, idx: &[usize], c: S) -> Self {
        let mut acc = Multivector::<S>::one(dim);
        for &i in idx {
            acc = acc.wedge_blade(Blade::generator(i));
        }
        acc.scaled(&c)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    dim: usize,
    text: String,
}

/// Serialized as `{"dim": n, "text": "<text form over e1..en>"}`.
impl<S: Scalar> Serialize for Multivector<S> {
    fn serialize<Z: serde::Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        Wire {
            dim: self.dim,
            text: self.to_text(&default_names(self.dim)),
        }
        .serialize(serializer)
    }
}

impl<'de, S: ParseCoeff> Deserialize<'de> for Multivector<S> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(deserializer)?;
        if w.dim > MAX_DIM {
            return Err(serde::de::Error::custom(Error::DimensionTooLarge(w.dim)));
        }
        parse_multivector(&w.text, &default_names(w.dim)).map_err(serde::de::Error::custom)
    }
}

impl Multivector<Rational> {
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(Blade::UNIT).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type Mv = Multivector<Rational>;

    fn e(dim: usize, idx: &[usize]) -> Mv {
        Mv::wedge_of(dim, idx, rat(1, 1))
    }

    #[test]
    fn wedge_examples() {
        let e1 = e(3, &[0]);
        let e2 = e(3, &[1]);
        assert_eq!(&e1 * &e2, Mv::blade(3, Blade(0b011)));
        assert_eq!(&e2 * &e1, -Mv::blade(3, Blade(0b011)));
        let v = e(3, &[0, 2]) + e(3, &[1]).scaled(&rat(3, 4));
        assert_eq!(&Mv::one(3) * &v, v);
        assert!((&e(3, &[0, 1]) * &e(3, &[0, 2])).is_zero());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(
            e(3, &[0]).wedge(&e(4, &[0])),
            Err(Error::DimensionMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn super_commutativity_examples() {
        assert!(e(3, &[0]).super_commutativity_check(&e(3, &[1])).unwrap());
        assert!(e(3, &[0, 1]).super_commutativity_check(&e(3, &[2])).unwrap());
        let inh = Mv::one(3) + e(3, &[0]);
        assert!(matches!(inh.super_commutativity_check(&e(3, &[1])), Err(Error::Inhomogeneous)));
    }

    #[test]
    fn contract_degree_examples() {
        let v = Mv::one(3) + e(3, &[0]) + e(3, &[0, 1]);
        assert_eq!(v.contract_degree(1), e(3, &[0]));
        assert!(Mv::zero(3).contract_degree(2).is_zero());
        let w = e(4, &[0, 1]) + e(4, &[2, 3]);
        assert_eq!(w.contract_degree(2), w);
    }

    #[test]
    fn homogeneity() {
        assert_eq!(e(3, &[0, 1]).homogeneity(), Homogeneity::Degree(2));
        assert_eq!((Mv::one(3) + e(3, &[0])).homogeneity(), Homogeneity::Inhomogeneous);
        assert_eq!(Mv::zero(3).homogeneity(), Homogeneity::Zero);
    }

    #[test]
    fn blade_order_is_degree_then_lex() {
        let all = Blade::all(4);
        assert_eq!(all.len(), 16);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let deg2 = Blade::all_of_degree(3, 2);
        assert_eq!(deg2, vec![Blade(0b011), Blade(0b101), Blade(0b110)]);
    }

    #[test]
    fn text_form() {
        let names: Vec<String> = ["h", "x", "y"].iter().map(|s| s.to_string()).collect();
        let v = e(3, &[1, 0]).scaled(&rat(-1, 2)) + Mv::one(3).scaled(&rat(3, 1)) + e(3, &[2]);
        let s = v.to_text(&names);
        assert_eq!(s, "3 + 1 * y + 1/2 * h^x");
        assert_eq!(parse_multivector::<Rational>(&s, &names).unwrap(), v);
        assert_eq!(parse_multivector::<Rational>("1 * x^h", &names).unwrap(), e(3, &[1, 0]));

        let frame: Vec<String> = ["dx", "dy"].iter().map(|s| s.to_string()).collect();
        let f = parse_poly("x^2+y^2", 2).unwrap();
        let pi = Multivector::<Poly>::term(2, Blade(0b11), f);
        let t = pi.to_text(&frame);
        assert_eq!(t, "(x^2 + y^2) * dx^dy");
        assert_eq!(parse_multivector::<Poly>(&t, &frame).unwrap(), pi);
    }
}
