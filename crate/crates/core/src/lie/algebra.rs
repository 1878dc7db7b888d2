use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::gerstenhaber::tables::BladeTables;
use crate::gerstenhaber::{schouten_bracket, BvOperator, Divergence, GerstenhaberContext};
use crate::linalg::Matrix;
use crate::scalar::Rational;

/// A finite-dimensional Lie algebra over ℚ given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Arc<Vec<String>>,
    /// table[i * dim + j] = [e_i, e_j]
    table: Arc<Vec<Multivector<Rational>>>,
}

impl LieAlgebra {
    /// Builds the algebra from brackets of basis pairs; pairs not listed
    /// bracket to zero and [e_j, e_i] is filled in by antisymmetry.
    /// Fails on inconsistent entries or when Jacobi does not hold.
    pub fn new(names: Vec<String>, brackets: &[(usize, usize, Multivector<Rational>)]) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::Invalid("a Lie algebra needs at least one generator".into()));
        }
        if dim > crate::exterior::MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let mut table = vec![Multivector::zero(dim); dim * dim];
        let mut set = vec![false; dim * dim];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::Invalid(format!("bracket index ({i}, {j}) out of range")));
            }
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: v.dim() });
            }
            if v.terms().any(|(b, _)| b.degree() != 1) {
                return Err(Error::Invalid(format!("[{}, {}] must be a linear combination of generators", names[i], names[j])));
            }
            if i == j && !v.is_zero() {
                return Err(Error::Invalid(format!("[{0}, {0}] must vanish", names[i])));
            }
            for (a, b, w) in [(i, j, v.clone()), (j, i, -v.clone())] {
                if set[a * dim + b] && table[a * dim + b] != w {
                    return Err(Error::Invalid(format!("conflicting values for [{}, {}]", names[a], names[b])));
                }
                set[a * dim + b] = true;
                table[a * dim + b] = w;
            }
        }
        let g = LieAlgebra {
            names: Arc::new(names),
            table: Arc::new(table),
        };
        if let Some((i, j, k)) = g.jacobi_witness() {
            return Err(Error::IdentityFailure {
                identity: "Jacobi".into(),
                witness: format!("({}, {}, {})", g.names[i], g.names[j], g.names[k]),
            });
        }
        Ok(g)
    }

    /// Linear Lie algebra spanned by the given square matrices, with the
    /// commutator bracket expressed back in that basis.
    pub fn from_matrices(names: Vec<String>, mats: &[Matrix]) -> Result<Self> {
        let dim = mats.len();
        if names.len() != dim {
            return Err(Error::Invalid("one name per matrix required".into()));
        }
        let flat = |m: &Matrix| -> Vec<Rational> { (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect() };
        let cols: Vec<_> = mats.iter().map(flat).collect();
        let n2 = cols.first().map_or(0, Vec::len);
        let basis = Matrix::from_columns(n2, &cols);
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let c = mats[i].mul(&mats[j])?.sub(&mats[j].mul(&mats[i])?)?;
                let x = basis
                    .solve(&flat(&c))
                    .ok_or_else(|| Error::Invalid(format!("[{}, {}] leaves the span", names[i], names[j])))?;
                let v = Multivector::from_terms(dim, x.into_iter().enumerate().map(|(k, q)| (Blade::generator(k), q)));
                brackets.push((i, j, v));
            }
        }
        LieAlgebra::new(names, &brackets)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generator(&self, i: usize) -> Multivector<Rational> {
        Multivector::generator(self.dim(), i)
    }

    /// Generator by name; panics if absent.
    pub fn gen(&self, name: &str) -> Multivector<Rational> {
        self.generator(self.index_of(name).unwrap_or_else(|| panic!("no generator named {name}")))
    }

    /// The Schouten bracket on Λ•𝔤.
    pub fn bracket(&self, a: &Multivector<Rational>, b: &Multivector<Rational>) -> Result<Multivector<Rational>> {
        schouten_bracket(self, a, b)
    }

    /// Every blade of Λ•𝔤, in canonical order.
    pub fn exterior_basis(&self) -> Vec<Multivector<Rational>> {
        Blade::all(self.dim()).into_iter().map(|b| Multivector::blade(self.dim(), b)).collect()
    }

    /// The Chevalley–Eilenberg operator, i.e. the BV operator of the zero divergence.
    pub fn chevalley_eilenberg(&self) -> BvOperator<LieAlgebra> {
        BvOperator::new(self.clone(), Divergence::zero(self.dim()))
    }

    /// Integer tables of the Chevalley–Eilenberg Δ and the bracket on blades,
    /// for exhaustive identity checks.
    pub fn blade_tables(&self) -> Result<BladeTables> {
        let dim = self.dim();
        let ce = self.chevalley_eilenberg();
        let mv = |b: Blade| Multivector::<Rational>::blade(dim, b);
        let br = |a: Blade, b: Blade| self.bracket(&mv(a), &mv(b)).expect("same dimension");
        BladeTables::new(dim, |b| ce.delta(&mv(b)), Some(&br))
    }

    /// Matrix of ad_v = [v, −] on 𝔤 for a degree-1 element v.
    pub fn ad_matrix(&self, v: &Multivector<Rational>) -> Result<Matrix> {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for j in 0..dim {
            let w = self.bracket(v, &self.generator(j))?;
            for (b, c) in w.terms() {
                if b.degree() != 1 {
                    return Err(Error::WrongDegree {
                        expected: 1,
                        found: b.degree() as i64,
                    });
                }
                m.set(b.indices().next().unwrap(), j, c.clone());
            }
        }
        Ok(m)
    }
}

impl GerstenhaberContext for LieAlgebra {
    type Scalar = Rational;

    fn rank(&self) -> usize {
        self.dim()
    }

    fn generator_bracket(&self, i: usize, j: usize) -> Multivector<Rational> {
        self.table[i * self.dim() + j].clone()
    }

    fn anchor(&self, _i: usize, _f: &Rational) -> Rational {
        Rational::zero()
    }

    fn has_zero_anchor(&self) -> bool {
        true
    }

    fn generator_names(&self) -> Vec<String> {
        self.names.to_vec()
    }

    fn jacobi_witness(&self) -> Option<(usize, usize, usize)> {
        let dim = self.dim();
        let br1 = |v: &Multivector<Rational>, k: usize| -> Multivector<Rational> {
            let mut out = Multivector::zero(dim);
            for (b, c) in v.terms() {
                let i = b.indices().next().unwrap();
                out.add_scaled(&self.table[i * dim + k], c);
            }
            out
        };
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let s = br1(&self.table[i * dim + j], k) + br1(&self.table[j * dim + k], i) + br1(&self.table[k * dim + i], j);
                    if !s.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}
