//! Polynomial vector fields on ℚⁿ: the Lie–Rinehart pair (ℚ[x₁..xₙ], ⊕ℚ[x]∂ᵢ),
//! its divergence and BV operator, Poisson bivectors, d_Π = [Π,−], the
//! modular class, and the rotation-invariant complex of Π = (x²+y²)∂x∧∂y.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::ChainComplex;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::gerstenhaber::checks::{check_operator_equality, check_product_derivation};
use crate::gerstenhaber::{schouten_bracket, Adjoint, BvOperator, CheckReport, Divergence, GerstenhaberContext};
use crate::linalg::Matrix;
use crate::operator::{Anticommutator, GradedBasis, GradedOperator, LinearOperator};
use crate::scalar::{parse_poly, Exponent, Poly, Rational, MAX_VARS};

/// A = ℚ[x₁..xₙ] with the frame ∂₁..∂ₙ acting by partial derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyLieRinehart {
    n: usize,
}

impl PolyLieRinehart {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VARS {
            return Err(Error::TooManyVariables { got: n, max: MAX_VARS });
        }
        Ok(PolyLieRinehart { n })
    }

    pub fn planar() -> Self {
        PolyLieRinehart { n: 2 }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// div(Σ pᵢ∂ᵢ) = Σ ∂pᵢ/∂xᵢ.
    pub fn divergence(&self) -> Divergence<Poly> {
        Divergence::zero(self.n)
    }

    pub fn bv(&self) -> BvOperator<Self> {
        BvOperator::new(*self, self.divergence())
    }

    /// BV operator of div(X) + X(a₀); equal to Δ + [a₀,−].
    pub fn shifted_bv(&self, a0: Poly) -> BvOperator<Self> {
        BvOperator::new(*self, self.divergence().shifted(a0))
    }

    /// The field Σ pᵢ∂ᵢ.
    pub fn field(&self, coeffs: &[Poly]) -> Multivector<Poly> {
        Multivector::from_terms(self.n, coeffs.iter().enumerate().map(|(i, p)| (Blade::generator(i), p.clone())))
    }

    pub fn scalar(&self, f: Poly) -> Multivector<Poly> {
        Multivector::scalar(self.n, f)
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        parse_poly(text, self.n)
    }
}

impl GerstenhaberContext for PolyLieRinehart {
    type Scalar = Poly;

    fn rank(&self) -> usize {
        self.n
    }

    fn generator_bracket(&self, _i: usize, _j: usize) -> Multivector<Poly> {
        Multivector::zero(self.n)
    }

    fn anchor(&self, i: usize, f: &Poly) -> Poly {
        f.derivative(i)
    }

    fn has_zero_anchor(&self) -> bool {
        false
    }

    fn generator_names(&self) -> Vec<String> {
        if self.n <= 3 {
            ["dx", "dy", "dz"][..self.n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=self.n).map(|i| format!("d{i}")).collect()
        }
    }

    fn jacobi_witness(&self) -> Option<(usize, usize, usize)> {
        None
    }
}

/// A bivector Π with [Π,Π] = 0.
#[derive(Clone, Debug)]
pub struct PoissonBivector {
    lr: PolyLieRinehart,
    pi: Multivector<Poly>,
}

impl PoissonBivector {
    pub fn new(lr: PolyLieRinehart, pi: Multivector<Poly>) -> Result<Self> {
        if pi.dim() != lr.num_vars() {
            return Err(Error::DimensionMismatch { left: lr.num_vars(), right: pi.dim() });
        }
        if let Some((b, _)) = pi.terms().find(|(b, _)| b.degree() != 2) {
            return Err(Error::WrongDegree {
                expected: 2,
                found: b.degree() as i64,
            });
        }
        let pp = schouten_bracket(&lr, &pi, &pi)?;
        if !pp.is_zero() {
            return Err(Error::IdentityFailure {
                identity: "[Π,Π] = 0".into(),
                witness: format!("[Π,Π] = {}", lr.text(&pp)),
            });
        }
        Ok(PoissonBivector { lr, pi })
    }

    /// f·∂x∧∂y on ℚ².
    pub fn planar(f: Poly) -> Self {
        let lr = PolyLieRinehart::planar();
        PoissonBivector {
            lr,
            pi: Multivector::term(2, Blade(0b11), f),
        }
    }

    pub fn context(&self) -> &PolyLieRinehart {
        &self.lr
    }

    pub fn pi(&self) -> &Multivector<Poly> {
        &self.pi
    }

    /// Largest total degree among the coefficients of Π.
    pub fn coeff_degree(&self) -> usize {
        self.pi.terms().map(|(_, c)| c.degree().unwrap_or(0)).max().unwrap_or(0)
    }

    /// d_Π = [Π,−].
    pub fn d_pi(&self) -> Adjoint<'_, PolyLieRinehart> {
        Adjoint::new(&self.lr, self.pi.clone()).expect("Π is homogeneous of degree 2")
    }

    /// [Π, g], the Hamiltonian field of g up to the sign convention f(g_y∂x − g_x∂y).
    pub fn hamiltonian_field(&self, g: &Poly) -> Multivector<Poly> {
        self.d_pi().apply(&self.lr.scalar(g.clone()))
    }

    /// X_Δ = Δ(Π) for the standard divergence.
    pub fn modular_class(&self) -> Result<Multivector<Poly>> {
        self.modular_class_of(&self.lr.bv())
    }

    /// Δ(Π) for a given BV operator; verifies d_Π(X_Δ) = 0.
    pub fn modular_class_of(&self, bv: &BvOperator<PolyLieRinehart>) -> Result<Multivector<Poly>> {
        let x = bv.delta(&self.pi);
        let dx = self.d_pi().apply(&x);
        if !dx.is_zero() {
            return Err(Error::IdentityFailure {
                identity: "d_Π(X_Δ) = 0".into(),
                witness: format!("d_Π({}) = {}", self.lr.text(&x), self.lr.text(&dx)),
            });
        }
        Ok(x)
    }

    pub fn text(&self, v: &Multivector<Poly>) -> String {
        self.lr.text(v)
    }
}

#[derive(Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct BivectorTerm {
    coeff: String,
    frame: [usize; 2],
}

/// Reads `[{"coeff": "x*y", "frame": [0, 1]}, …]`; the number of variables is
/// the smallest n ≥ 2 covering every frame index and every variable used in a
/// coefficient.
pub fn parse_bivector_json(text: &str) -> Result<PoissonBivector> {
    let terms: Vec<BivectorTerm> = serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    let mut n = terms.iter().flat_map(|t| t.frame).max().map_or(2, |m| (m + 1).max(2));
    for t in &terms {
        n = n.max(parse_poly(&t.coeff, MAX_VARS)?.num_vars_used());
    }
    let lr = PolyLieRinehart::new(n)?;
    let mut pi = Multivector::zero(n);
    for t in &terms {
        let [i, j] = t.frame;
        if i == j {
            return Err(Error::Invalid(format!("frame [{i}, {j}] repeats an index")));
        }
        let c = lr.parse(&t.coeff)?;
        let e = |k| Multivector::<Poly>::generator(n, k);
        pi += &(&e(i) * &e(j)).scaled(&c);
    }
    PoissonBivector::new(lr, pi)
}

/// Restriction of polynomial coefficients to total degree ≤ N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationWindow {
    pub max_poly_degree: usize,
}

impl TruncationWindow {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Window(format!("window N = {n} is too small; N ≥ 2 required")));
        }
        Ok(TruncationWindow { max_poly_degree: n })
    }

    /// Every monomial multivector with coefficient degree ≤ N.
    pub fn basis(&self, lr: &PolyLieRinehart) -> GradedBasis {
        GradedBasis::window(lr.num_vars(), lr.num_vars(), |_| self.max_poly_degree)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnimodularityReport {
    pub window: usize,
    /// Coefficient bound used for the degree-1 target space.
    pub target_window: usize,
    pub modular_class: String,
    pub unimodular_within_window: bool,
    /// a with X_Δ = [Π, a], when one exists in the window.
    pub witness: Option<String>,
    #[serde(skip)]
    pub witness_poly: Option<Poly>,
    pub rank: usize,
    pub augmented_rank: usize,
    pub note: String,
}

/// Searches for a ∈ ℚ[x] of degree ≤ N with X_Δ = d_Π(a) by exact linear
/// algebra. A negative answer only excludes polynomial witnesses in the window.
pub fn unimodularity_probe(p: &PoissonBivector, w: TruncationWindow) -> Result<UnimodularityReport> {
    let lr = p.context();
    let n = lr.num_vars();
    let x = p.modular_class()?;
    let bound = w.max_poly_degree;
    let target = (bound + p.coeff_degree()).max(x.terms().map(|(_, c)| c.degree().unwrap_or(0)).max().unwrap_or(0));
    let domain = Arc::new(GradedBasis::window(n, n, |_| bound).truncated(0));
    let codomain = Arc::new(GradedBasis::window(n, n, |_| target).truncated(1));
    let op = LinearOperator::materialize(&p.d_pi(), domain.clone(), codomain.clone())?;
    let a = op.block(0);
    let b = codomain.coords(1, &x)?;
    let rank = a.rank();
    let mut aug_cols: Vec<_> = (0..a.cols()).map(|j| a.column(j)).collect();
    aug_cols.push(b.clone());
    let augmented_rank = Matrix::from_columns(a.rows(), &aug_cols).rank();
    let witness_poly = a.solve(&b).map(|c| {
        let s: Multivector<Poly> = domain.combine(0, &c);
        s.coeff(Blade::UNIT)
    });
    let unimodular = witness_poly.is_some();
    let note = if unimodular {
        "X_Δ = [Π, a]; the divergence shifted by −a makes Π strictly unimodular".to_string()
    } else {
        format!("no polynomial a of degree ≤ {bound} with X_Δ = [Π, a] (rank {rank} < augmented rank {augmented_rank}); this says nothing about non-polynomial or higher-degree witnesses")
    };
    Ok(UnimodularityReport {
        window: bound,
        target_window: target,
        modular_class: p.text(&x),
        unimodular_within_window: unimodular,
        witness: witness_poly.as_ref().map(|a| a.to_string()),
        witness_poly,
        rank,
        augmented_rank,
        note,
    })
}

/// On every window basis element: Δd_Π + d_ΠΔ = [X_Δ,−], and the product
/// Leibniz rule for Δd_Π + d_ΠΔ on all pairs.
pub fn bider_reports(p: &PoissonBivector, w: TruncationWindow) -> Result<[CheckReport; 2]> {
    let lr = p.context();
    let bv = lr.bv();
    let x = p.modular_class_of(&bv)?;
    let names = lr.generator_names();
    let basis = w.basis(lr);
    let elems: Vec<Multivector<Poly>> = (0..=basis.top_degree()).flat_map(|k| basis.elements(k)).collect();
    let anti = Anticommutator { a: &bv, b: p.d_pi() };
    let ad_x = Adjoint::new(lr, x)?;
    let eq = check_operator_equality("Δd_Π + d_ΠΔ = [X_Δ,−]", &anti, &ad_x, &elems, &names);
    let leibniz = check_product_derivation(&anti, &elems, &names, "(Δd_Π + d_ΠΔ)");
    Ok([eq, leibniz])
}

/// Random polynomial with integer coefficients in −3..=3 on monomials of degree ≤ `max_deg`.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, max_deg: usize) -> Poly {
    let mut p = Poly::zero();
    for e in Exponent::all_up_to(nvars, max_deg) {
        if rng.gen_bool(0.5) {
            let c: i64 = rng.gen_range(-3..=3);
            p.add_term(e, &Rational::from_integer(c.into()));
        }
    }
    p
}

/// The named fields of the ℝ² example on ℚ[x,y].
#[derive(Clone, Debug)]
pub struct PlanarFields {
    /// x² + y²
    pub r2: Poly,
    /// ∂θ := ½X_Δ = y∂x − x∂y, the rotation field oriented so that
    /// Δ(Π) = 2∂θ and ∂θ∧D_r = Π.
    pub theta: Multivector<Poly>,
    /// x∂x + y∂y
    pub d_r: Multivector<Poly>,
    /// ∂x∧∂y
    pub vol: Multivector<Poly>,
    /// (x² + y²)∂x∧∂y
    pub pi: Multivector<Poly>,
}

impl PlanarFields {
    pub fn new() -> Self {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let r2 = x.mul_ref(&x) + y.mul_ref(&y);
        let lr = PolyLieRinehart::planar();
        let vol = Multivector::blade(2, Blade(0b11));
        PlanarFields {
            theta: lr.field(&[y.clone(), -x.clone()]),
            d_r: lr.field(&[x, y]),
            pi: vol.scaled(&r2),
            vol,
            r2,
        }
    }

    pub fn bivector(&self) -> PoissonBivector {
        PoissonBivector::planar(self.r2.clone())
    }
}

impl Default for PlanarFields {
    fn default() -> Self {
        Self::new()
    }
}

fn power_label(k: usize, base: &str) -> String {
    match (k, base) {
        (0, _) => base.to_string(),
        (_, "1") => format!("r^{}", 2 * k),
        (1, "Vol") => "Π".to_string(),
        _ => format!("r^{} * {base}", 2 * k),
    }
}

/// The ∂θ-invariant polynomial multivectors for Π = (x²+y²)∂x∧∂y with
/// coefficient degree ≤ N + p in exterior degree p, with d_Π restricted.
#[derive(Clone, Debug)]
pub struct InvariantPlanarComplex {
    pub window: TruncationWindow,
    pub complex: ChainComplex,
    /// The basis multivectors per degree, in the order of the complex.
    pub basis: Vec<Vec<Multivector<Poly>>>,
}

pub fn rotation_invariant_subcomplex(w: TruncationWindow) -> Result<InvariantPlanarComplex> {
    let f = PlanarFields::new();
    let lr = PolyLieRinehart::planar();
    let p = f.bivector();
    let n = w.max_poly_degree;
    let pow = |k: usize| f.r2.pow(k as u32);
    let mut basis: Vec<Vec<Multivector<Poly>>> = vec![Vec::new(); 3];
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); 3];
    for k in 0..=n / 2 {
        basis[0].push(lr.scalar(pow(k)));
        labels[0].push(power_label(k, "1"));
    }
    for k in 0..=n / 2 {
        basis[1].push(f.theta.scaled(&pow(k)));
        labels[1].push(power_label(k, "∂θ"));
    }
    for k in 0..=n / 2 {
        basis[1].push(f.d_r.scaled(&pow(k)));
        labels[1].push(power_label(k, "D_r"));
    }
    for k in 0..=(n + 2) / 2 {
        basis[2].push(f.vol.scaled(&pow(k)));
        labels[2].push(power_label(k, "Vol"));
    }
    let ad_theta = Adjoint::new(&lr, f.theta.clone())?;
    for (v, l) in basis.iter().flatten().zip(labels.iter().flatten()) {
        let t = ad_theta.apply(v);
        if !t.is_zero() {
            return Err(Error::IdentityFailure {
                identity: "[∂θ, v] = 0".into(),
                witness: format!("v = {l}: {}", lr.text(&t)),
            });
        }
    }
    let ambient = GradedBasis::window(2, 2, |k| n + k);
    let coords = |k: usize, v: &Multivector<Poly>| ambient.coords(k, v);
    let d_pi = p.d_pi();
    let mut diffs = Vec::new();
    for k in 0..2 {
        let cols = basis[k + 1].iter().map(|v| coords(k + 1, v)).collect::<Result<Vec<_>>>()?;
        let target = Matrix::from_columns(ambient.piece_dim(k + 1), &cols);
        let mut d = Matrix::zeros(basis[k + 1].len(), basis[k].len());
        for (j, v) in basis[k].iter().enumerate() {
            let img = coords(k + 1, &d_pi.apply(v))?;
            let x = target
                .solve(&img)
                .ok_or_else(|| Error::Window(format!("d_Π({}) leaves the invariant window", labels[k][j])))?;
            for (i, q) in x.into_iter().enumerate() {
                d.set(i, j, q);
            }
        }
        diffs.push(d);
    }
    Ok(InvariantPlanarComplex {
        window: w,
        complex: ChainComplex::new(diffs, labels)?,
        basis,
    })
}

/// d_Π on polynomial multivectors with coefficient degree ≤ N + k·(p − 1) in
/// exterior degree k, p the coefficient degree of Π. These bounds make the
/// truncation a subcomplex; its cohomology approximates, but need not equal,
/// the Poisson cohomology.
pub fn window_complex(p: &PoissonBivector, w: TruncationWindow) -> Result<ChainComplex> {
    let lr = p.context();
    let n = lr.num_vars();
    let step = p.coeff_degree() as i64 - 1;
    let bound = |k: usize| w.max_poly_degree as i64 + k as i64 * step;
    let full = GradedBasis::window(n, n, |k| bound(k).max(0) as usize);
    let pieces = (0..=n).map(|k| if bound(k) < 0 { Vec::new() } else { full.piece(k).to_vec() }).collect();
    let basis = Arc::new(GradedBasis::new(n, pieces));
    let op = LinearOperator::materialize(&p.d_pi(), basis.clone(), basis)?;
    ChainComplex::from_operator(&op, &lr.generator_names())
}

/// Is `v` a scalar multiple of `w`? Returns the factor.
pub fn proportional(v: &Multivector<Poly>, w: &Multivector<Poly>) -> Option<Rational> {
    let (b, c) = w.terms().next()?;
    let (e, q) = c.terms().next()?;
    let f = v.coeff(*b).coeff(e) / q;
    (w.scaled(&Poly::constant(f.clone())) == *v).then_some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gerstenhaber::check_divergence_axioms;

    fn poly(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn modular_class_examples() {
        let text = |f: &str| {
            let p = PoissonBivector::planar(poly(f));
            p.text(&p.modular_class().unwrap())
        };
        assert_eq!(text("1"), "0");
        assert_eq!(text("x*y"), "(x) * dx + (-y) * dy");
        assert_eq!(text("x^2+y^2"), "(2*y) * dx + (-2*x) * dy");
    }

    #[test]
    fn divergence_axioms_on_polynomials() {
        let lr = PolyLieRinehart::new(3).unwrap();
        let probe = [poly("x^2*y - 3"), poly("y^3 + x")];
        check_divergence_axioms(&lr, &lr.divergence(), &probe).unwrap();
        check_divergence_axioms(&lr, &lr.divergence().shifted(poly("x*y^2")), &probe).unwrap();
    }

    #[test]
    fn non_poisson_bivector_is_rejected() {
        let lr = PolyLieRinehart::new(3).unwrap();
        let e = |i| Multivector::<Poly>::generator(3, i);
        // y∂y∧∂z + ∂x∧∂y; the field (y, 0, 1) is not orthogonal to its curl.
        let pi = (&e(1) * &e(2)).scaled(&poly("y")) + &e(0) * &e(1);
        assert!(PoissonBivector::new(lr, pi).is_err());
    }

    #[test]
    fn window_needs_two() {
        assert!(TruncationWindow::new(1).is_err());
        assert!(TruncationWindow::new(2).is_ok());
    }
}
