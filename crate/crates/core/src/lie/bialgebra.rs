use std::sync::Arc;

use super::LieAlgebra;
use crate::cohomology::ChainComplex;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::gerstenhaber::{bracket_contraction, CheckReport, GerstenhaberContext};
use crate::linalg::Matrix;
use crate::operator::{GradedOperator, LinearOperator};
use crate::scalar::Rational;

/// The derivation of Λ•𝔤 of degree `shift` (0 or 1) that extends a linear map
/// on generators: e_{s₁}∧⋯∧e_{s_k} ↦ Σ_p (−1)^{shift·(p−1)} e_{s₁}∧⋯∧D(e_{s_p})∧⋯∧e_{s_k}.
#[derive(Clone, Debug)]
pub struct DerivationExtension {
    dim: usize,
    shift: i32,
    values: Arc<Vec<Multivector<Rational>>>,
}

impl DerivationExtension {
    pub fn new(shift: i32, values: Vec<Multivector<Rational>>) -> Result<Self> {
        let dim = values.len();
        for v in &values {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: v.dim() });
            }
            if let Some(b) = v.terms().map(|(b, _)| *b).find(|b| b.degree() as i32 != 1 + shift) {
                return Err(Error::WrongDegree {
                    expected: 1 + shift as i64,
                    found: b.degree() as i64,
                });
            }
        }
        Ok(DerivationExtension {
            dim,
            shift,
            values: Arc::new(values),
        })
    }

    pub fn values(&self) -> &[Multivector<Rational>] {
        &self.values
    }

    fn on_blade(&self, s: Blade) -> Multivector<Rational> {
        let idx: Vec<usize> = s.indices().collect();
        let mut out = Multivector::zero(self.dim);
        for p in 0..idx.len() {
            let img = &self.values[idx[p]];
            if img.is_zero() {
                continue;
            }
            let before = Blade::from_indices(&idx[..p]).expect("increasing");
            let after = Blade::from_indices(&idx[p + 1..]).expect("increasing");
            let mut t = img.blade_wedge(before).wedge_blade(after);
            if self.shift % 2 != 0 && p % 2 == 1 {
                t = -t;
            }
            out += &t;
        }
        out
    }

    pub fn materialize(&self) -> LinearOperator {
        LinearOperator::on_exterior(self, self.dim).expect("exterior basis is closed")
    }
}

impl GradedOperator<Rational> for DerivationExtension {
    fn shift(&self) -> i32 {
        self.shift
    }

    fn apply(&self, v: &Multivector<Rational>) -> Multivector<Rational> {
        let mut out = Multivector::zero(self.dim);
        for (b, c) in v.terms() {
            out.add_scaled(&self.on_blade(*b), c);
        }
        out
    }
}

/// A Lie bialgebra cobracket δ: 𝔤 → Λ²𝔤, stored by its values on generators.
#[derive(Clone, Debug)]
pub struct Cobracket {
    algebra: LieAlgebra,
    values: Vec<Multivector<Rational>>,
    r: Option<Multivector<Rational>>,
}

impl Cobracket {
    /// Validates co-Jacobi and the 1-cocycle condition.
    pub fn new(algebra: LieAlgebra, values: Vec<Multivector<Rational>>) -> Result<Self> {
        if values.len() != algebra.dim() {
            return Err(Error::Invalid(format!("cobracket needs {} values, got {}", algebra.dim(), values.len())));
        }
        for (i, v) in values.iter().enumerate() {
            if v.dim() != algebra.dim() {
                return Err(Error::DimensionMismatch { left: algebra.dim(), right: v.dim() });
            }
            if v.terms().any(|(b, _)| b.degree() != 2) {
                return Err(Error::Invalid(format!("δ({}) must lie in Λ²", algebra.names()[i])));
            }
        }
        let c = Cobracket { algebra, values, r: None };
        c.validate()?;
        Ok(c)
    }

    pub fn zero(algebra: LieAlgebra) -> Self {
        let values = vec![Multivector::zero(algebra.dim()); algebra.dim()];
        Cobracket { algebra, values, r: None }
    }

    /// Coboundary cobracket δ(v) = ad_v(r) := [v, r].
    pub fn from_r(algebra: LieAlgebra, r: Multivector<Rational>) -> Result<Self> {
        if r.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch { left: algebra.dim(), right: r.dim() });
        }
        if r.terms().any(|(b, _)| b.degree() != 2) {
            return Err(Error::WrongDegree {
                expected: 2,
                found: r.homogeneous_degree().map_or(-1, |d| d as i64),
            });
        }
        let values = (0..algebra.dim())
            .map(|i| algebra.bracket(&algebra.generator(i), &r))
            .collect::<Result<Vec<_>>>()?;
        let c = Cobracket {
            algebra,
            values,
            r: Some(r),
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let names = self.algebra.names();
        if let Some(i) = self.co_jacobi_witness() {
            return Err(Error::IdentityFailure {
                identity: "co-Jacobi".into(),
                witness: names[i].clone(),
            });
        }
        if let Some((i, j)) = self.cocycle_witness() {
            return Err(Error::IdentityFailure {
                identity: "1-cocycle".into(),
                witness: format!("({}, {})", names[i], names[j]),
            });
        }
        Ok(())
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn value(&self, i: usize) -> &Multivector<Rational> {
        &self.values[i]
    }

    pub fn values(&self) -> &[Multivector<Rational>] {
        &self.values
    }

    pub fn r(&self) -> Option<&Multivector<Rational>> {
        self.r.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Multivector::is_zero)
    }

    /// d_δ, the degree +1 derivation of Λ•𝔤 extending δ.
    pub fn d_delta(&self) -> DerivationExtension {
        DerivationExtension::new(1, self.values.clone()).expect("validated degrees")
    }

    /// A generator e with d_δ²(e) ≠ 0. Since d_δ² is a derivation, this decides co-Jacobi.
    pub fn co_jacobi_witness(&self) -> Option<usize> {
        let d = self.d_delta();
        (0..self.algebra.dim()).find(|&i| !d.apply(&d.apply(&self.algebra.generator(i))).is_zero())
    }

    /// A pair with δ[x,y] ≠ ad_x(δy) − ad_y(δx).
    pub fn cocycle_witness(&self) -> Option<(usize, usize)> {
        let g = &self.algebra;
        let d = self.d_delta();
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let (x, y) = (g.generator(i), g.generator(j));
                let lhs = d.apply(&g.bracket(&x, &y).expect("same algebra"));
                let rhs = g.bracket(&x, &self.values[j]).expect("same algebra") - g.bracket(&y, &self.values[i]).expect("same algebra");
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// 𝒟 = [−,−]∘δ, after checking d_CE d_δ + d_δ d_CE = −∂_𝒟 degree by degree.
    pub fn intrinsic_biderivation(&self) -> Result<Biderivation> {
        let bider = self.biderivation_unchecked();
        let report = self.anticommutator_report(&bider);
        if let Some(w) = report.witness {
            return Err(Error::IdentityFailure {
                identity: report.identity,
                witness: w.inputs.join(", "),
            });
        }
        Ok(bider)
    }

    fn biderivation_unchecked(&self) -> Biderivation {
        let g = &self.algebra;
        let images = self
            .values
            .iter()
            .map(|v| bracket_contraction(g, v).expect("degree-2 values"))
            .collect();
        let h_r = self.r.as_ref().map(|r| -bracket_contraction(g, r).expect("degree-2 r"));
        Biderivation {
            algebra: g.clone(),
            images,
            h_r,
        }
    }

    /// Compares d_CE d_δ + d_δ d_CE with −∂_𝒟 as matrices on Λ•𝔤.
    pub fn anticommutator_report(&self, bider: &Biderivation) -> CheckReport {
        let id = "d_CE d_δ + d_δ d_CE = −∂_𝒟";
        let g = &self.algebra;
        let ce = LinearOperator::on_exterior(&g.chevalley_eilenberg(), g.dim()).expect("closed");
        let dd = self.d_delta().materialize();
        let lhs = ce.anticommutator(&dd).expect("same basis");
        let rhs = bider.extension().materialize().neg();
        match lhs.first_difference(&rhs) {
            None => CheckReport::pass(id),
            Some((k, _, col)) => {
                let v = lhs.domain().element::<Rational>(k, col);
                let names = g.names();
                CheckReport::fail(
                    id,
                    vec![v.to_text(names)],
                    lhs.apply_checked(&v).expect("in basis").to_text(names),
                    rhs.apply_checked(&v).expect("in basis").to_text(names),
                )
            }
        }
    }

    /// The cochain complex (Λ•𝔤, d_δ).
    pub fn complex(&self) -> Result<ChainComplex> {
        ChainComplex::from_operator(&self.d_delta().materialize(), self.algebra.names())
    }

    /// Involutive means 𝒟 = 0.
    pub fn is_involutive(&self) -> bool {
        self.biderivation_unchecked().is_zero()
    }
}

/// The intrinsic biderivation 𝒟 = [−,−]∘δ: 𝔤 → 𝔤.
#[derive(Clone, Debug)]
pub struct Biderivation {
    algebra: LieAlgebra,
    images: Vec<Multivector<Rational>>,
    h_r: Option<Multivector<Rational>>,
}

impl Biderivation {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// 𝒟(e_i).
    pub fn image(&self, i: usize) -> &Multivector<Rational> {
        &self.images[i]
    }

    /// For a coboundary cobracket, the element with −H_r = [−,−](r).
    pub fn h_r(&self) -> Option<&Multivector<Rational>> {
        self.h_r.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Multivector::is_zero)
    }

    /// dim × dim matrix whose column i holds the coordinates of 𝒟(e_i).
    pub fn matrix(&self) -> Matrix {
        let dim = self.algebra.dim();
        let mut m = Matrix::zeros(dim, dim);
        for (j, v) in self.images.iter().enumerate() {
            for (b, c) in v.terms() {
                m.set(b.indices().next().expect("degree 1"), j, c.clone());
            }
        }
        m
    }

    /// ∂_𝒟, the degree-0 derivation of Λ•𝔤 extending 𝒟.
    pub fn extension(&self) -> DerivationExtension {
        DerivationExtension::new(0, self.images.clone()).expect("degree-1 images")
    }

    /// 𝒟[x,y] = [𝒟x,y] + [x,𝒟y] on generator pairs.
    pub fn bracket_derivation_report(&self) -> CheckReport {
        let id = "𝒟[x,y] = [𝒟x,y] + [x,𝒟y]";
        let g = &self.algebra;
        let d = self.extension();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let (x, y) = (g.generator(i), g.generator(j));
                let lhs = d.apply(&g.bracket(&x, &y).expect("same algebra"));
                let rhs = g.bracket(&self.images[i], &y).expect("same algebra") + g.bracket(&x, &self.images[j]).expect("same algebra");
                if lhs != rhs {
                    return CheckReport::fail(id, vec![g.names()[i].clone(), g.names()[j].clone()], g.text(&lhs), g.text(&rhs));
                }
            }
        }
        CheckReport::pass(id)
    }

    /// ∂_𝒟 d_δ = d_δ ∂_𝒟 on Λ•𝔤.
    pub fn coderivation_report(&self, cobracket: &Cobracket) -> CheckReport {
        let id = "∂_𝒟 d_δ = d_δ ∂_𝒟";
        let d = self.extension().materialize();
        let dd = cobracket.d_delta().materialize();
        let lhs = d.compose(&dd).expect("same basis");
        let rhs = dd.compose(&d).expect("same basis");
        match lhs.first_difference(&rhs) {
            None => CheckReport::pass(id),
            Some((k, _, col)) => {
                let v = lhs.domain().element::<Rational>(k, col);
                let g = &self.algebra;
                CheckReport::fail(
                    id,
                    vec![g.text(&v)],
                    g.text(&lhs.apply_checked(&v).expect("in basis")),
                    g.text(&rhs.apply_checked(&v).expect("in basis")),
                )
            }
        }
    }

    /// For coboundary cobrackets: matrix(𝒟) = matrix(ad H_r).
    pub fn adjoint_report(&self) -> Option<CheckReport> {
        let h = self.h_r.as_ref()?;
        let id = "𝒟 = [H_r, −]";
        let ad = self.algebra.ad_matrix(h).expect("degree-1 H_r");
        let m = self.matrix();
        Some(if ad == m {
            CheckReport::pass(id)
        } else {
            let j = (0..m.cols()).find(|&j| ad.column(j) != m.column(j)).unwrap_or(0);
            let g = &self.algebra;
            CheckReport::fail(
                id,
                vec![g.names()[j].clone()],
                g.text(&self.images[j]),
                g.text(&g.bracket(h, &g.generator(j)).expect("same algebra")),
            )
        })
    }

    /// Eigenvalue of ∂_𝒟 on a blade, when the blade is an eigenvector.
    pub fn eigenvalue_on(&self, v: &Multivector<Rational>) -> Option<Rational> {
        let w = self.extension().apply(v);
        let (b, c) = v.terms().next()?;
        let lambda = w.coeff(*b) / c;
        (w == v.scaled(&lambda)).then_some(lambda)
    }
}
