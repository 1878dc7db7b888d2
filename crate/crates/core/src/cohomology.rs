//! Exact cohomology of finite cochain complexes over ℚ and the reduction to
//! the invariant subcomplex of a diagonalizable degree-0 operator.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank_of, Matrix, Vector};
use crate::operator::{GradedBasis, LinearOperator};
use crate::scalar::{format_rational, is_negative, Exponent, Poly, Rational};

/// Coordinates of a subcomplex inside an ambient complex, used only to print
/// representatives in the ambient basis.
#[derive(Clone, Debug)]
pub struct Embedding {
    /// `maps[k]` has one column per subcomplex basis vector.
    pub maps: Vec<Matrix>,
    pub labels: Vec<Vec<String>>,
}

/// Cochain complex C⁰ → C¹ → ⋯ with `diffs[k]: C^k → C^{k+1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
    labels: Vec<Vec<String>>,
    embedding: Option<Embedding>,
}

fn render_term(c: &Rational, label: &str, first: bool, out: &mut String) {
    let neg = is_negative(c);
    let abs = if neg { -c.clone() } else { c.clone() };
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    if label == "1" {
        out.push_str(&format_rational(&abs));
    } else if abs.is_one() {
        out.push_str(label);
    } else {
        out.push_str(&format_rational(&abs));
        out.push_str(" * ");
        out.push_str(label);
    }
}

/// Text of Σ cᵢ·labelᵢ, skipping zero coefficients.
pub fn render_combination(coeffs: &[Rational], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in coeffs.iter().zip(labels) {
        if !c.is_zero() {
            render_term(c, l, out.is_empty(), &mut out);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Label of a basis key, e.g. `x^2*y * dx^dy`, `h^x`, `1`.
pub fn basis_label(blade: crate::exterior::Blade, exp: Exponent, names: &[String]) -> String {
    let mono = (!exp.is_constant()).then(|| Poly::monomial(exp, Rational::one()).to_string());
    match (blade.0 == 0, mono) {
        (true, None) => "1".into(),
        (true, Some(m)) => m,
        (false, None) => blade.name(names),
        (false, Some(m)) => format!("{m} * {}", blade.name(names)),
    }
}

impl ChainComplex {
    /// Checks shapes and d_{k+1} d_k = 0 exactly.
    pub fn new(diffs: Vec<Matrix>, labels: Vec<Vec<String>>) -> Result<Self> {
        let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::Shape(format!("{} degrees need {} differentials, got {}", dims.len(), dims.len().saturating_sub(1), diffs.len())));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != dims[k + 1] || d.cols() != dims[k] {
                return Err(Error::Shape(format!("d_{k} is {}x{}, expected {}x{}", d.rows(), d.cols(), dims[k + 1], dims[k])));
            }
        }
        for k in 1..diffs.len() {
            let dd = diffs[k].mul(&diffs[k - 1])?;
            if let Some((i, j)) = dd.first_nonzero() {
                return Err(Error::IdentityFailure {
                    identity: "d² = 0".into(),
                    witness: format!("(d_{k} d_{}) entry ({i}, {j}) = {}", k - 1, format_rational(dd.get(i, j))),
                });
            }
        }
        Ok(ChainComplex {
            dims,
            diffs,
            labels,
            embedding: None,
        })
    }

    /// Complex with zero differentials.
    pub fn zero(labels: Vec<Vec<String>>) -> Result<Self> {
        let diffs = labels.windows(2).map(|w| Matrix::zeros(w[1].len(), w[0].len())).collect();
        Self::new(diffs, labels)
    }

    /// The complex of a degree +1 operator whose domain and codomain coincide.
    pub fn from_operator(op: &LinearOperator, names: &[String]) -> Result<Self> {
        if op.shift() != 1 {
            return Err(Error::WrongDegree {
                expected: 1,
                found: op.shift() as i64,
            });
        }
        let basis: &GradedBasis = op.domain();
        let top = basis.top_degree();
        let labels = (0..=top)
            .map(|k| basis.piece(k).iter().map(|&(b, e)| basis_label(b, e, names)).collect())
            .collect();
        Self::new(op.blocks()[..top].to_vec(), labels)
    }

    pub fn with_embedding(mut self, embedding: Embedding) -> Self {
        self.embedding = Some(embedding);
        self
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_degrees(&self) -> usize {
        self.dims.len()
    }

    pub fn differential(&self, k: usize) -> &Matrix {
        &self.diffs[k]
    }

    pub fn labels(&self, k: usize) -> &[String] {
        &self.labels[k]
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    /// A degree-k vector in ambient coordinates (identity without an embedding).
    pub fn ambient(&self, k: usize, v: &[Rational]) -> Vector {
        match &self.embedding {
            Some(e) => e.maps[k].apply(v),
            None => v.to_vec(),
        }
    }

    pub fn render(&self, k: usize, v: &[Rational]) -> String {
        match &self.embedding {
            Some(e) => render_combination(&e.maps[k].apply(v), &e.labels[k]),
            None => render_combination(v, &self.labels[k]),
        }
    }

    fn incoming(&self, k: usize) -> Option<&Matrix> {
        k.checked_sub(1).map(|j| &self.diffs[j])
    }

    fn outgoing(&self, k: usize) -> Option<&Matrix> {
        self.diffs.get(k)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub betti: usize,
    pub representatives: Vec<String>,
    #[serde(skip)]
    pub vectors: Vec<Vector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyReport {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn degree(&self, k: usize) -> Option<&DegreeCohomology> {
        self.degrees.iter().find(|d| d.degree == k)
    }

    /// Keeps only the listed degrees.
    pub fn restricted(&self, degrees: &[usize]) -> CohomologyReport {
        CohomologyReport {
            degrees: self.degrees.iter().filter(|d| degrees.contains(&d.degree)).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    /// Aligned table, one row per degree.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:>3}  {:>5}  {:>5}  {:>5}  {:>5}  {}\n", "k", "dim", "ker", "im", "H^k", "representatives");
        for d in &self.degrees {
            let reps = if d.representatives.is_empty() { "-".to_string() } else { d.representatives.join("; ") };
            out.push_str(&format!("{:>3}  {:>5}  {:>5}  {:>5}  {:>5}  {}\n", d.degree, d.dim, d.kernel_dim, d.image_dim, d.betti, reps));
        }
        out
    }
}

fn rows_matrix(cols: usize, rows: &[Vector]) -> Matrix {
    let mut m = Matrix::zeros(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

/// Kernel vectors reduced modulo the echelon image basis, then brought to
/// reduced echelon form themselves.
fn representatives(n: usize, kernel: &[Vector], image: &[Vector]) -> Vec<Vector> {
    let (img, pivots) = rows_matrix(n, image).rref();
    let reduced: Vec<Vector> = kernel
        .iter()
        .map(|v| {
            let mut v = v.clone();
            for (r, &p) in pivots.iter().enumerate() {
                let f = v[p].clone();
                if !f.is_zero() {
                    for j in 0..n {
                        let x = img.get(r, j);
                        if !x.is_zero() {
                            v[j] -= &f * x;
                        }
                    }
                }
            }
            v
        })
        .collect();
    let (m, piv) = rows_matrix(n, &reduced).rref();
    (0..piv.len()).map(|i| m.row(i).to_vec()).collect()
}

/// Betti numbers and representatives in every degree.
pub fn cohomology(c: &ChainComplex) -> CohomologyReport {
    let degrees = (0..c.num_degrees())
        .map(|k| {
            let n = c.dims[k];
            let kernel = match c.outgoing(k) {
                Some(d) => d.kernel(),
                None => (0..n).map(|i| unit(n, i)).collect(),
            };
            let image = c.incoming(k).map(Matrix::image_basis).unwrap_or_default();
            let vectors = representatives(n, &kernel, &image);
            debug_assert_eq!(vectors.len(), kernel.len() - image.len());
            DegreeCohomology {
                degree: k,
                dim: n,
                kernel_dim: kernel.len(),
                image_dim: image.len(),
                betti: kernel.len() - image.len(),
                representatives: vectors.iter().map(|v| c.render(k, v)).collect(),
                vectors,
            }
        })
        .collect();
    CohomologyReport { degrees }
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenSummand {
    pub eigenvalue: String,
    /// Dimension of the eigenspace in each degree.
    pub dims: Vec<usize>,
    pub betti: Vec<usize>,
}

/// Evidence that the inclusion of the 0-eigenspace subcomplex is a
/// quasi-isomorphism: the operator is diagonalizable over ℚ in every degree,
/// the differential preserves each eigenspace, and every summand for a
/// nonzero eigenvalue is acyclic.
#[derive(Clone, Debug, Serialize)]
pub struct QuasiIsoCertificate {
    pub summands: Vec<EigenSummand>,
}

impl QuasiIsoCertificate {
    pub fn is_trivial(&self) -> bool {
        self.summands.iter().all(|s| s.eigenvalue == "0")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::from("eigenvalue  dims  betti\n");
        for s in &self.summands {
            out.push_str(&format!("{:>10}  {:?}  {:?}\n", s.eigenvalue, s.dims, s.betti));
        }
        out
    }
}

fn shifted(m: &Matrix, lambda: &Rational) -> Matrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        out.set(i, i, m.get(i, i) - lambda);
    }
    out
}

/// Eigenvalues of each block with their eigenspaces; fails unless the block
/// is diagonalizable over ℚ.
fn eigenspaces(blocks: &[Matrix]) -> Result<Vec<Vec<(Rational, Vec<Vector>)>>> {
    blocks
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let n = m.rows();
            if m.cols() != n {
                return Err(Error::Shape(format!("operator block {k} is not square")));
            }
            if n == 0 {
                return Ok(Vec::new());
            }
            let roots = m.charpoly()?.square_free().rational_roots()?;
            let spaces: Vec<_> = roots.into_iter().map(|l| (l.clone(), shifted(m, &l).kernel())).collect();
            let total: usize = spaces.iter().map(|(_, v)| v.len()).sum();
            if total != n {
                return Err(Error::Hypothesis(format!(
                    "the operator is not diagonalizable over ℚ in degree {k} (eigenspaces span {total} of {n} dimensions); the invariant-subcomplex reduction does not apply"
                )));
            }
            Ok(spaces)
        })
        .collect()
}

/// Restriction of `c` to the subspaces spanned by `bases[k]` (given as
/// ambient column vectors). Fails if the differential leaves them.
fn restrict(c: &ChainComplex, bases: &[Vec<Vector>], what: &str) -> Result<ChainComplex> {
    let mats: Vec<Matrix> = bases.iter().enumerate().map(|(k, b)| Matrix::from_columns(c.dims[k], b)).collect();
    let mut diffs = Vec::new();
    for k in 0..c.num_degrees() - 1 {
        let mut d = Matrix::zeros(bases[k + 1].len(), bases[k].len());
        for (j, v) in bases[k].iter().enumerate() {
            let img = c.diffs[k].apply(v);
            let x = mats[k + 1]
                .solve(&img)
                .ok_or_else(|| Error::Hypothesis(format!("the differential does not preserve the {what} in degree {k}")))?;
            for (i, q) in x.into_iter().enumerate() {
                d.set(i, j, q);
            }
        }
        diffs.push(d);
    }
    let labels = (0..c.num_degrees())
        .map(|k| (0..bases[k].len()).map(|i| format!("v{k}_{i}")).collect())
        .collect();
    let ambient = match &c.embedding {
        Some(e) => Embedding {
            maps: mats.iter().zip(&e.maps).map(|(m, e)| e.mul(m)).collect::<Result<_>>()?,
            labels: e.labels.clone(),
        },
        None => Embedding {
            maps: mats,
            labels: c.labels.clone(),
        },
    };
    Ok(ChainComplex::new(diffs, labels)?.with_embedding(ambient))
}

/// The subcomplex ker D, where `d_op[k]` is a degree-0 operator on C^k
/// commuting with the differential, together with a certificate that the
/// inclusion is a quasi-isomorphism.
pub fn invariant_subcomplex(c: &ChainComplex, d_op: &[Matrix]) -> Result<(ChainComplex, QuasiIsoCertificate)> {
    if d_op.len() != c.num_degrees() || d_op.iter().zip(&c.dims).any(|(m, &n)| m.rows() != n) {
        return Err(Error::Shape("one square operator block per degree required".into()));
    }
    let spaces = eigenspaces(d_op)?;
    let mut eigenvalues: Vec<Rational> = spaces.iter().flatten().map(|(l, _)| l.clone()).collect();
    eigenvalues.sort();
    eigenvalues.dedup();
    if !eigenvalues.iter().any(Zero::is_zero) {
        eigenvalues.insert(0, Rational::zero());
    }
    let basis_for = |lambda: &Rational| -> Vec<Vec<Vector>> {
        spaces
            .iter()
            .map(|s| s.iter().find(|(l, _)| l == lambda).map(|(_, v)| v.clone()).unwrap_or_default())
            .collect()
    };
    let mut invariant = None;
    let mut summands = Vec::new();
    for lambda in &eigenvalues {
        let bases = basis_for(lambda);
        let what = format!("{}-eigenspaces", format_rational(lambda));
        let sub = restrict(c, &bases, &what)?;
        let betti = cohomology(&sub).betti();
        if !lambda.is_zero() && betti.iter().any(|&b| b != 0) {
            return Err(Error::Hypothesis(format!(
                "the summand for eigenvalue {} has nonzero cohomology {betti:?}",
                format_rational(lambda)
            )));
        }
        summands.push(EigenSummand {
            eigenvalue: format_rational(lambda),
            dims: bases.iter().map(Vec::len).collect(),
            betti,
        });
        if lambda.is_zero() {
            invariant = Some(sub);
        }
    }
    Ok((invariant.expect("0 is always included"), QuasiIsoCertificate { summands }))
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub degrees: Vec<usize>,
    pub full: CohomologyReport,
    pub invariant: CohomologyReport,
    pub certificate: QuasiIsoCertificate,
    pub betti_equal: bool,
    pub representatives_independent: bool,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.betti_equal && self.representatives_independent
    }
}

/// Cohomology of the full complex and of the invariant subcomplex on the
/// listed degrees; they agree when Betti numbers match and the invariant
/// representatives stay independent modulo the full image.
pub fn compare_full_vs_invariant(c: &ChainComplex, d_op: &[Matrix], degrees: &[usize]) -> Result<Comparison> {
    let (sub, certificate) = invariant_subcomplex(c, d_op)?;
    let full = cohomology(c).restricted(degrees);
    let invariant = cohomology(&sub).restricted(degrees);
    let betti_equal = full.betti() == invariant.betti();
    let representatives_independent = invariant.degrees.iter().all(|d| {
        let k = d.degree;
        let image = c.incoming(k).map(Matrix::image_basis).unwrap_or_default();
        let mut all = image.clone();
        all.extend(d.vectors.iter().map(|v| sub.ambient(k, v)));
        rank_of(&all) == image.len() + d.vectors.len()
    });
    Ok(Comparison {
        degrees: degrees.to_vec(),
        full,
        invariant,
        certificate,
        betti_equal,
        representatives_independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn labels(dims: &[usize]) -> Vec<Vec<String>> {
        dims.iter().enumerate().map(|(k, &n)| (0..n).map(|i| format!("e{k}{i}")).collect()).collect()
    }

    #[test]
    fn zero_differential_keeps_everything() {
        let c = ChainComplex::zero(labels(&[1, 3, 3, 1])).unwrap();
        assert_eq!(cohomology(&c).betti(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn d_squared_is_checked() {
        let d0 = Matrix::from_i64(&[&[1]]);
        let d1 = Matrix::from_i64(&[&[1]]);
        let err = ChainComplex::new(vec![d0, d1], labels(&[1, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::IdentityFailure { .. }), "{err}");
    }

    #[test]
    fn representatives_avoid_the_image() {
        // C⁰ = ℚ → C¹ = ℚ², 1 ↦ e₀ + e₁.
        let d0 = Matrix::from_i64(&[&[1], &[1]]);
        let c = ChainComplex::new(vec![d0], labels(&[1, 2])).unwrap();
        let h = cohomology(&c);
        assert_eq!(h.betti(), vec![0, 1]);
        assert_eq!(h.degrees[1].representatives, vec!["e11".to_string()]);
    }

    #[test]
    fn rendering() {
        let l: Vec<String> = ["1", "h", "x"].iter().map(|s| s.to_string()).collect();
        assert_eq!(render_combination(&[rat(2, 1), rat(-1, 1), rat(1, 2)], &l), "2 - h + 1/2 * x");
        assert_eq!(render_combination(&vec![rat(0, 1); 3], &l), "0");
    }

    #[test]
    fn non_diagonalizable_is_rejected() {
        let c = ChainComplex::zero(labels(&[2])).unwrap();
        let jordan = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(matches!(invariant_subcomplex(&c, &[jordan]), Err(Error::Hypothesis(_))));
        let rotation = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(matches!(invariant_subcomplex(&c, &[rotation]), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn acyclic_summand_is_dropped() {
        // ℚa ⊕ ℚb → ℚc with a ↦ c; D = 1 on a and c, 0 on b.
        let d0 = Matrix::from_i64(&[&[1, 0]]);
        let c = ChainComplex::new(vec![d0], labels(&[2, 1])).unwrap();
        let ops = [Matrix::from_i64(&[&[1, 0], &[0, 0]]), Matrix::from_i64(&[&[1]])];
        let cmp = compare_full_vs_invariant(&c, &ops, &[0, 1]).unwrap();
        assert!(cmp.agrees());
        assert_eq!(cmp.invariant.degrees[0].representatives, vec!["e01".to_string()]);
    }
}
