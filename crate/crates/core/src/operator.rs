//! Degree-homogeneous linear operators on exterior algebras, both as functions
//! on multivectors and materialized as exact matrices per degree.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Exponent, Rational, Scalar};

/// A linear map Λ• → Λ•⁺ˢʰⁱᶠᵗ given by its action on multivectors.
pub trait GradedOperator<S: Scalar>: Send + Sync {
    fn shift(&self) -> i32;
    fn apply(&self, v: &Multivector<S>) -> Multivector<S>;
}

impl<S: Scalar, T: GradedOperator<S> + ?Sized> GradedOperator<S> for &T {
    fn shift(&self) -> i32 {
        (**self).shift()
    }
    fn apply(&self, v: &Multivector<S>) -> Multivector<S> {
        (**self).apply(v)
    }
}

impl<S: Scalar, T: GradedOperator<S> + ?Sized> GradedOperator<S> for Box<T> {
    fn shift(&self) -> i32 {
        (**self).shift()
    }
    fn apply(&self, v: &Multivector<S>) -> Multivector<S> {
        (**self).apply(v)
    }
}

/// Operator from a closure.
pub struct FnOperator<F> {
    shift: i32,
    f: F,
}

impl<F> FnOperator<F> {
    pub fn new(shift: i32, f: F) -> Self {
        FnOperator { shift, f }
    }
}

impl<S: Scalar, F> GradedOperator<S> for FnOperator<F>
where
    F: Fn(&Multivector<S>) -> Multivector<S> + Send + Sync,
{
    fn shift(&self) -> i32 {
        self.shift
    }
    fn apply(&self, v: &Multivector<S>) -> Multivector<S> {
        (self.f)(v)
    }
}

/// `a∘b + b∘a`, the graded commutator of two odd operators.
pub struct Anticommutator<A, B> {
    pub a: A,
    pub b: B,
}

impl<S: Scalar, A: GradedOperator<S>, B: GradedOperator<S>> GradedOperator<S> for Anticommutator<A, B> {
    fn shift(&self) -> i32 {
        self.a.shift() + self.b.shift()
    }
    fn apply(&self, v: &Multivector<S>) -> Multivector<S> {
        self.a.apply(&self.b.apply(v)) + self.b.apply(&self.a.apply(v))
    }
}

pub type BasisKey = (Blade, Exponent);

/// Finite basis of a graded space: per exterior degree, a list of
/// (blade, coefficient monomial) pairs.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    dim: usize,
    pieces: Vec<Vec<BasisKey>>,
    index: Vec<HashMap<BasisKey, usize>>,
}

impl GradedBasis {
    pub fn new(dim: usize, pieces: Vec<Vec<BasisKey>>) -> Self {
        let index = pieces
            .iter()
            .map(|p| p.iter().enumerate().map(|(i, k)| (*k, i)).collect())
            .collect();
        GradedBasis { dim, pieces, index }
    }

    /// Blade basis of Λ•ℚⁿ in canonical order.
    pub fn exterior(dim: usize) -> Self {
        Self::new(
            dim,
            (0..=dim)
                .map(|k| {
                    Blade::all_of_degree(dim, k)
                        .into_iter()
                        .map(|b| (b, Exponent::zero()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Polynomial window: in exterior degree k, all `monomial · blade` with
    /// monomials in `nvars` variables of total degree ≤ `bound(k)`.
    /// Ordered by blade first, then monomial.
    pub fn window(dim: usize, nvars: usize, bound: impl Fn(usize) -> usize) -> Self {
        Self::new(
            dim,
            (0..=dim)
                .map(|k| {
                    let monos = Exponent::all_up_to(nvars, bound(k));
                    Blade::all_of_degree(dim, k)
                        .into_iter()
                        .flat_map(|b| monos.iter().map(move |m| (b, *m)))
                        .collect()
                })
                .collect(),
        )
    }

    /// Drops every piece above exterior degree `top`.
    pub fn truncated(mut self, top: usize) -> Self {
        self.pieces.truncate(top + 1);
        self.index.truncate(top + 1);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn top_degree(&self) -> usize {
        self.pieces.len().saturating_sub(1)
    }

    pub fn piece(&self, k: usize) -> &[BasisKey] {
        self.pieces.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn piece_dim(&self, k: usize) -> usize {
        self.piece(k).len()
    }

    pub fn element<S: Scalar>(&self, k: usize, i: usize) -> Multivector<S> {
        let (b, e) = self.pieces[k][i];
        Multivector::term(self.dim, b, S::monomial(e, Rational::from_integer(1.into())))
    }

    pub fn elements<S: Scalar>(&self, k: usize) -> Vec<Multivector<S>> {
        (0..self.piece_dim(k)).map(|i| self.element(k, i)).collect()
    }

    /// Coordinates of a degree-k element; fails when `v` leaves the span.
    pub fn coords<S: Scalar>(&self, k: usize, v: &Multivector<S>) -> Result<Vector> {
        let mut out = vec![Rational::zero(); self.piece_dim(k)];
        for (b, c) in v.terms() {
            for (e, q) in c.expand() {
                let idx = self
                    .index
                    .get(k)
                    .and_then(|m| m.get(&(*b, e)))
                    .ok_or_else(|| Error::Window(format!("term {b:?}·{e:?} outside the degree-{k} basis")))?;
                out[*idx] += q;
            }
        }
        Ok(out)
    }

    /// Multivector with the given coordinates in degree k.
    pub fn combine<S: Scalar>(&self, k: usize, coords: &[Rational]) -> Multivector<S> {
        let mut out = Multivector::zero(self.dim);
        for (i, q) in coords.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let (b, e) = self.pieces[k][i];
            out.add_term(b, S::monomial(e, q.clone()));
        }
        out
    }
}

/// A degree-homogeneous linear operator stored as one exact matrix per source degree.
#[derive(Clone, Debug)]
pub struct LinearOperator {
    shift: i32,
    domain: Arc<GradedBasis>,
    codomain: Arc<GradedBasis>,
    /// `blocks[k]` maps domain degree k to codomain degree k + shift
    /// (rows: codomain piece, columns: domain piece).
    blocks: Vec<Matrix>,
}

impl LinearOperator {
    pub fn from_blocks(shift: i32, domain: Arc<GradedBasis>, codomain: Arc<GradedBasis>, blocks: Vec<Matrix>) -> Result<Self> {
        if blocks.len() != domain.top_degree() + 1 {
            return Err(Error::Shape("one block per domain degree required".into()));
        }
        for (k, m) in blocks.iter().enumerate() {
            let rows = target(k, shift).map_or(0, |t| codomain.piece_dim(t));
            if m.rows() != rows || m.cols() != domain.piece_dim(k) {
                return Err(Error::Shape(format!("block {k} has shape {}x{}", m.rows(), m.cols())));
            }
        }
        Ok(LinearOperator {
            shift,
            domain,
            codomain,
            blocks,
        })
    }

    /// Materializes `op` on every basis element of `domain`. Errors if an image
    /// leaves `codomain`.
    pub fn materialize<S: Scalar>(
        op: &impl GradedOperator<S>,
        domain: Arc<GradedBasis>,
        codomain: Arc<GradedBasis>,
    ) -> Result<Self> {
        let shift = op.shift();
        let mut blocks = Vec::new();
        for k in 0..=domain.top_degree() {
            let t = target(k, shift);
            let rows = t.map_or(0, |t| codomain.piece_dim(t));
            let mut m = Matrix::zeros(rows, domain.piece_dim(k));
            for j in 0..domain.piece_dim(k) {
                let img = op.apply(&domain.element::<S>(k, j));
                match t {
                    Some(t) if t <= codomain.top_degree() => {
                        let col = codomain.coords(t, &img)?;
                        for (i, x) in col.into_iter().enumerate() {
                            m.set(i, j, x);
                        }
                    }
                    _ => {
                        if !img.is_zero() {
                            return Err(Error::Window(format!(
                                "image of a degree-{k} element lands outside the codomain"
                            )));
                        }
                    }
                }
            }
            blocks.push(m);
        }
        Ok(LinearOperator {
            shift,
            domain,
            codomain,
            blocks,
        })
    }

    /// Materializes an operator on the full exterior algebra Λ•ℚⁿ.
    pub fn on_exterior(op: &impl GradedOperator<Rational>, dim: usize) -> Result<Self> {
        let b = Arc::new(GradedBasis::exterior(dim));
        Self::materialize(op, b.clone(), b)
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn domain(&self) -> &Arc<GradedBasis> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<GradedBasis> {
        &self.codomain
    }

    pub fn block(&self, k: usize) -> &Matrix {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// Applies the stored matrices to a multivector in the domain span.
    pub fn apply_checked<S: Scalar>(&self, v: &Multivector<S>) -> Result<Multivector<S>> {
        let mut out = Multivector::zero(self.codomain.dim());
        for k in 0..=self.domain.top_degree() {
            let part = v.contract_degree(k);
            if part.is_zero() {
                continue;
            }
            let Some(t) = target(k, self.shift) else { continue };
            let x = self.domain.coords(k, &part)?;
            let y = self.blocks[k].apply(&x);
            out += &self.codomain.combine(t, &y);
        }
        Ok(out)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if !Arc::ptr_eq(&other.codomain, &self.domain) && !same_basis(&other.codomain, &self.domain) {
            return Err(Error::Shape("composition across different bases".into()));
        }
        let shift = self.shift + other.shift;
        let mut blocks = Vec::new();
        for k in 0..=other.domain.top_degree() {
            let rows = target(k, shift).map_or(0, |t| self.codomain.piece_dim(t));
            let m = match target(k, other.shift) {
                Some(mid) if mid <= self.domain.top_degree() => self.blocks[mid].mul(&other.blocks[k])?,
                _ => Matrix::zeros(rows, other.domain.piece_dim(k)),
            };
            blocks.push(m);
        }
        LinearOperator::from_blocks(shift, other.domain.clone(), self.codomain.clone(), blocks)
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if self.shift != other.shift {
            return Err(Error::Shape("sum of operators with different degrees".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        LinearOperator::from_blocks(self.shift, self.domain.clone(), self.codomain.clone(), blocks)
    }

    pub fn scale(&self, c: &Rational) -> LinearOperator {
        LinearOperator {
            shift: self.shift,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            blocks: self.blocks.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> LinearOperator {
        self.scale(&Rational::from_integer((-1).into()))
    }

    /// `self∘other + other∘self`.
    pub fn anticommutator(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.compose(other)?.add(&other.compose(self)?)
    }

    /// `self∘other − other∘self`.
    pub fn commutator(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.compose(other)?.add(&other.compose(self)?.neg())
    }

    /// Blockwise equality, reporting the first differing (degree, row, column).
    pub fn first_difference(&self, other: &LinearOperator) -> Option<(usize, usize, usize)> {
        for (k, (a, b)) in self.blocks.iter().zip(&other.blocks).enumerate() {
            if a != b {
                if a.rows() != b.rows() || a.cols() != b.cols() {
                    return Some((k, 0, 0));
                }
                let d = a.sub(b).ok()?;
                let (i, j) = d.first_nonzero().unwrap_or((0, 0));
                return Some((k, i, j));
            }
        }
        None
    }
}

impl<S: Scalar> GradedOperator<S> for LinearOperator {
    fn shift(&self) -> i32 {
        self.shift
    }

    fn apply(&self, v: &Multivector<S>) -> Multivector<S> {
        self.apply_checked(v).expect("operand outside the materialized basis")
    }
}

fn same_basis(a: &GradedBasis, b: &GradedBasis) -> bool {
    a.dim == b.dim && a.pieces == b.pieces
}

fn target(k: usize, shift: i32) -> Option<usize> {
    let t = k as i64 + shift as i64;
    (t >= 0).then_some(t as usize)
}
