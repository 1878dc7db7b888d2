//! Dense exact linear algebra over ℚ.
//!
//! Gaussian elimination uses a fixed pivoting rule (leftmost column with a
//! nonzero entry, then the smallest row index holding one) so every derived
//! basis is deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

pub type Vector = Vec<Rational>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(&v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        } else {
            Ok(())
        }
    }

    /// First nonzero entry in row-major order, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|x| !x.is_zero())
            .map(|k| (k / self.cols, k % self.cols))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = Rational::one() / m.get(r, c);
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pj = m.get(r, j);
                    if !pj.is_zero() {
                        let x = m.get(i, j) - &f * pj;
                        m.set(i, j, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis: one vector per free column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Echelon basis of the column space (rows of the RREF of the transpose).
    pub fn image_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.transpose().rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    /// Some solution of `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Characteristic polynomial det(tI − A) via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Result<UniPoly> {
        if self.rows != self.cols {
            return Err(Error::Shape("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut h = self.clone();
        // Similarity reduction to upper Hessenberg form.
        for k in 0..n.saturating_sub(2) {
            let Some(p) = (k + 1..n).find(|&i| !h.get(i, k).is_zero()) else {
                continue;
            };
            if p != k + 1 {
                h.swap_rows(p, k + 1);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + k + 1);
                }
            }
            let piv = h.get(k + 1, k).clone();
            for i in k + 2..n {
                let f = h.get(i, k) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = h.get(i, j) - &f * h.get(k + 1, j);
                    h.set(i, j, x);
                }
                for r in 0..n {
                    let x = h.get(r, k + 1) + &f * h.get(r, i);
                    h.set(r, k + 1, x);
                }
            }
        }
        // Recurrence on leading principal minors of tI − H.
        let mut polys: Vec<UniPoly> = vec![UniPoly::one()];
        for m in 1..=n {
            let t_minus = UniPoly::from_coeffs(vec![-h.get(m - 1, m - 1).clone(), Rational::one()]);
            let mut pm = t_minus.mul(&polys[m - 1]);
            let mut prod = Rational::one();
            for i in (1..m).rev() {
                prod *= h.get(i, i - 1);
                if prod.is_zero() {
                    break;
                }
                let c = &prod * h.get(i - 1, m - 1);
                pm = pm.sub(&polys[i - 1].scale(&c));
            }
            polys.push(pm);
        }
        Ok(polys.pop().unwrap())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Rank of a list of vectors (as rows).
pub fn rank_of(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors).rank()
}

/// Univariate polynomial over ℚ, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::from_coeffs(vec![]);
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(c)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        UniPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::from_coeffs(vec![]), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (i, b) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * b;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::from_coeffs(q), UniPoly::from_coeffs(r))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part p / gcd(p, p′), monic.
    pub fn square_free(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// All distinct rational roots, ascending.
    ///
    /// Candidates p/q come from the rational root theorem on the integer-scaled
    /// polynomial; the numerator range is limited by a Fujiwara bound. Fails when
    /// the candidate search would be unreasonably large.
    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        let sf = self.square_free();
        let Some(deg) = sf.degree() else {
            return Ok(vec![]);
        };
        let mut roots = Vec::new();
        let mut p = sf.clone();
        if p.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            p = p.div_rem(&UniPoly::from_coeffs(vec![Rational::zero(), Rational::one()])).0;
        }
        if deg == 0 || p.degree() == Some(0) {
            return Ok(roots);
        }
        // Integer scaling.
        let l = p
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let lead = ints.last().unwrap().abs();
        let n = ints.len() - 1;
        let lead_f = lead.to_f64().unwrap_or(f64::MAX);
        let mut bound = 0f64;
        for (k, c) in ints.iter().enumerate().take(n) {
            let ratio = c.abs().to_f64().unwrap_or(f64::MAX) / lead_f;
            let e = (n - k) as f64;
            let term = if k == 0 { (ratio / 2.0).powf(1.0 / e) } else { ratio.powf(1.0 / e) };
            bound = bound.max(term);
        }
        let bound = (2.0 * bound).ceil() + 1.0;
        let lead_u = lead.to_u64().ok_or_else(|| Error::Hypothesis("leading coefficient too large for root search".into()))?;
        let work = bound * lead_u as f64;
        if !work.is_finite() || work > 5.0e7 {
            return Err(Error::Hypothesis(format!(
                "rational root search space too large (bound {bound}, leading coefficient {lead})"
            )));
        }
        let divisors: Vec<u64> = (1..=lead_u).filter(|d| lead_u % d == 0).collect();
        let max_num = (bound * lead_u as f64) as i64;
        for &q in &divisors {
            let qi = q as i64;
            let limit = (bound * q as f64).ceil() as i64;
            for num in -limit.min(max_num)..=limit.min(max_num) {
                if num == 0 || num.gcd(&qi) != 1 {
                    continue;
                }
                let cand = Rational::new(BigInt::from(num), BigInt::from(qi));
                if p.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}
