#![allow(dead_code)]

use gbv_core::cohomology::ChainComplex;
use gbv_core::linalg::Matrix;
use gbv_core::scalar::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

/// Rank by fraction-free (Bareiss) elimination on cleared-denominator rows.
pub fn bareiss_rank(m: &Matrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let l = (0..cols).fold(BigInt::from(1), |l, j| num_integer::Integer::lcm(&l, m.get(i, j).denom()));
            (0..cols).map(|j| (m.get(i, j) * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

pub fn oracle_betti(c: &ChainComplex) -> Vec<usize> {
    let n = c.num_degrees();
    let ranks: Vec<usize> = (0..n - 1).map(|k| bareiss_rank(c.differential(k))).collect();
    (0..n)
        .map(|k| {
            let out = if k + 1 < n { ranks[k] } else { 0 };
            let inc = if k > 0 { ranks[k - 1] } else { 0 };
            c.dims()[k] - out - inc
        })
        .collect()
}

type IMat = Vec<Vec<i128>>;

fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn mul(a: &IMat, b: &IMat, inner: usize) -> IMat {
    let rows = a.len();
    let cols = b.first().map_or(0, Vec::len);
    (0..rows)
        .map(|i| (0..cols).map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// A random unimodular matrix and its inverse.
fn unimodular(rng: &mut impl Rng, n: usize) -> (IMat, IMat) {
    let mut p = identity(n);
    let mut q = identity(n);
    if n < 2 {
        return (p, q);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c: i128 = [-2, -1, 1, 2][rng.gen_range(0..4)];
        // P ← E P with E = I + c e_ij; P⁻¹ ← P⁻¹ E⁻¹.
        for k in 0..n {
            p[i][k] += c * p[j][k];
        }
        for row in q.iter_mut() {
            row[j] -= c * row[i];
        }
    }
    (p, q)
}

/// Random complex with planted Betti numbers: in each degree the basis splits
/// into a part hit from below, a part mapped isomorphically up, and a
/// harmonic part, then every degree is scrambled by a unimodular change of basis.
pub fn planted_complex(rng: &mut impl Rng, max_total: usize) -> (ChainComplex, Vec<usize>) {
    let degrees = rng.gen_range(2..=5);
    let mut betti = vec![0usize; degrees];
    let mut ranks = vec![0usize; degrees];
    loop {
        for k in 0..degrees {
            betti[k] = rng.gen_range(0..=3);
            ranks[k] = if k + 1 < degrees { rng.gen_range(0..=4) } else { 0 };
        }
        let total: usize = (0..degrees).map(|k| betti[k] + ranks[k] + if k > 0 { ranks[k - 1] } else { 0 }).sum();
        if total <= max_total && total > 0 {
            break;
        }
    }
    let dims: Vec<usize> = (0..degrees).map(|k| betti[k] + ranks[k] + if k > 0 { ranks[k - 1] } else { 0 }).collect();
    let changes: Vec<(IMat, IMat)> = dims.iter().map(|&n| unimodular(rng, n)).collect();
    let mut diffs = Vec::new();
    for k in 0..degrees - 1 {
        let below = if k > 0 { ranks[k - 1] } else { 0 };
        let mut j: IMat = vec![vec![0; dims[k]]; dims[k + 1]];
        for t in 0..ranks[k] {
            j[t][below + t] = 1;
        }
        let (p_next, _) = &changes[k + 1];
        let (_, q_here) = &changes[k];
        let d = mul(&mul(p_next, &j, dims[k + 1]), q_here, dims[k]);
        let mut m = Matrix::zeros(dims[k + 1], dims[k]);
        for (r, row) in d.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, Rational::from_integer(BigInt::from(x)));
            }
        }
        diffs.push(m);
    }
    let labels = dims.iter().enumerate().map(|(k, &n)| (0..n).map(|i| format!("c{k}_{i}")).collect()).collect();
    (ChainComplex::new(diffs, labels).expect("d² = 0 by construction"), betti)
}
