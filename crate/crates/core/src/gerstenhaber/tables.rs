//! Integer lookup tables for exhaustive identity checks on Λ•𝔤 with
//! dim 𝔤 ≤ 8. Every blade is a mask below 2^dim; Δ and the bracket on blade
//! pairs are stored as sparse integer vectors after clearing denominators by a
//! common factor, which leaves the (homogeneous) identities unchanged.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::checks::CheckReport;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::scalar::Rational;

pub const MAX_TABLE_DIM: usize = 8;

type Sparse = Vec<(u16, i64)>;

pub struct BladeTables {
    dim: usize,
    size: usize,
    /// wedge[s * size + t] = (sign, s ∪ t), sign 0 when s ∩ t ≠ ∅.
    wedge: Vec<(i8, u16)>,
    delta: Vec<Sparse>,
    bracket: Option<Vec<Sparse>>,
}

fn lcm_of_denominators<'a>(vs: impl Iterator<Item = &'a Multivector<Rational>>) -> BigInt {
    let mut l = BigInt::one();
    for v in vs {
        for (_, c) in v.terms() {
            l = l.lcm(c.denom());
        }
    }
    l
}

fn to_sparse(v: &Multivector<Rational>, scale: &BigInt) -> Result<Sparse> {
    v.terms()
        .map(|(b, c)| {
            let n = c * Rational::from_integer(scale.clone());
            debug_assert!(n.is_integer());
            n.to_integer()
                .to_i64()
                .filter(|x| x.unsigned_abs() < (1 << 40))
                .map(|x| (b.0 as u16, x))
                .ok_or_else(|| Error::Invalid("coefficient too large for the integer fast path".into()))
        })
        .collect()
}

impl BladeTables {
    /// Builds tables from Δ on blades and, optionally, the bracket on blade pairs.
    pub fn new(
        dim: usize,
        delta: impl Fn(Blade) -> Multivector<Rational>,
        bracket: Option<&dyn Fn(Blade, Blade) -> Multivector<Rational>>,
    ) -> Result<Self> {
        if dim > MAX_TABLE_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let size = 1usize << dim;
        let mut wedge = vec![(0i8, 0u16); size * size];
        for s in 0..size {
            for t in 0..size {
                if let Some((neg, u)) = Blade(s as u64).wedge(Blade(t as u64)) {
                    wedge[s * size + t] = (if neg { -1 } else { 1 }, u.0 as u16);
                }
            }
        }
        let dv: Vec<_> = (0..size).map(|s| delta(Blade(s as u64))).collect();
        let bv: Option<Vec<_>> = bracket.map(|f| {
            (0..size * size)
                .map(|i| f(Blade((i / size) as u64), Blade((i % size) as u64)))
                .collect()
        });
        let scale = lcm_of_denominators(dv.iter().chain(bv.iter().flatten()));
        let delta = dv.iter().map(|v| to_sparse(v, &scale)).collect::<Result<_>>()?;
        let bracket = match bv {
            Some(b) => Some(b.iter().map(|v| to_sparse(v, &scale)).collect::<Result<_>>()?),
            None => None,
        };
        Ok(BladeTables {
            dim,
            size,
            wedge,
            delta,
            bracket,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn w(&self, s: usize, t: usize) -> (i64, usize) {
        let (sg, u) = self.wedge[s * self.size + t];
        (sg as i64, u as usize)
    }

    fn mask_text(&self, s: usize, names: &[String]) -> String {
        Multivector::<Rational>::blade(self.dim, Blade(s as u64)).to_text(names)
    }

    /// Δ² = 0 on every blade.
    pub fn delta_squared(&self, names: &[String]) -> CheckReport {
        let id = "Δ² = 0";
        let mut acc = Accumulator::new(self.size);
        for s in 0..self.size {
            for &(t, v) in &self.delta[s] {
                for &(u, x) in &self.delta[t as usize] {
                    acc.add(u as usize, v * x);
                }
            }
            if let Some(bad) = acc.nonzero_and_clear() {
                return CheckReport::fail(id, vec![self.mask_text(s, names)], format!("nonzero at {}", self.mask_text(bad, names)), "0".into());
            }
        }
        CheckReport::pass(id)
    }

    /// The seven-term identity on every triple of blades. Returns the first failing triple.
    pub fn seven_term(&self) -> Option<(Blade, Blade, Blade)> {
        let n = self.size;
        let d = &self.delta;
        let mut acc = Accumulator::new(n);
        for a in 0..n {
            let pa = (a as u32).count_ones() as usize;
            let sa = if pa % 2 == 1 { -1 } else { 1 };
            for b in 0..n {
                let pb = (b as u32).count_ones() as usize;
                let (s_ab, ab) = self.w(a, b);
                let s_bac = if (pa + 1) * pb % 2 == 1 { -1 } else { 1 };
                let s_ab_par = if (pa + pb) % 2 == 1 { -1 } else { 1 };
                for c in 0..n {
                    let (s_bc, bc) = self.w(b, c);
                    let (s_ac, ac) = self.w(a, c);
                    if s_ab != 0 {
                        // Δ(abc)
                        let (s2, abc) = self.w(ab, c);
                        if s2 != 0 {
                            for &(t, v) in &d[abc] {
                                acc.add(t as usize, s_ab * s2 * v);
                            }
                        }
                        // −Δ(ab)c
                        for &(t, v) in &d[ab] {
                            let (s, u) = self.w(t as usize, c);
                            if s != 0 {
                                acc.add(u, -s_ab * s * v);
                            }
                        }
                        // (−1)^{|a|+|b|} abΔ(c)
                        for &(t, v) in &d[c] {
                            let (s, u) = self.w(ab, t as usize);
                            if s != 0 {
                                acc.add(u, s_ab_par * s_ab * s * v);
                            }
                        }
                    }
                    if s_bc != 0 {
                        // Δ(a)bc
                        for &(t, v) in &d[a] {
                            let (s, u) = self.w(t as usize, bc);
                            if s != 0 {
                                acc.add(u, s_bc * s * v);
                            }
                        }
                        // −(−1)^{|a|} aΔ(bc)
                        for &(t, v) in &d[bc] {
                            let (s, u) = self.w(a, t as usize);
                            if s != 0 {
                                acc.add(u, -sa * s_bc * s * v);
                            }
                        }
                    }
                    if s_ac != 0 {
                        // −(−1)^{(|a|+1)|b|} bΔ(ac)
                        for &(t, v) in &d[ac] {
                            let (s, u) = self.w(b, t as usize);
                            if s != 0 {
                                acc.add(u, -s_bac * s_ac * s * v);
                            }
                        }
                    }
                    // (−1)^{|a|} aΔ(b)c
                    for &(t, v) in &d[b] {
                        let (s1, u1) = self.w(a, t as usize);
                        if s1 == 0 {
                            continue;
                        }
                        let (s2, u2) = self.w(u1, c);
                        if s2 != 0 {
                            acc.add(u2, sa * s1 * s2 * v);
                        }
                    }
                    if acc.nonzero_and_clear().is_some() {
                        return Some((Blade(a as u64), Blade(b as u64), Blade(c as u64)));
                    }
                }
            }
        }
        None
    }

    fn bracket_table(&self) -> &[Sparse] {
        self.bracket.as_deref().expect("tables built without the bracket")
    }

    /// [a,b]_Δ = [a,b] on every pair of blades. Returns the first failing pair.
    pub fn bracket_generation(&self) -> Option<(Blade, Blade)> {
        let n = self.size;
        let br = self.bracket_table();
        let d = &self.delta;
        let mut acc = Accumulator::new(n);
        for a in 0..n {
            let odd_a = (a as u32).count_ones() % 2 == 1;
            let sa = if odd_a { -1 } else { 1 };
            for b in 0..n {
                let (s_ab, ab) = self.w(a, b);
                // (−1)^{|a|}(Δ(ab) − Δ(a)b) − aΔ(b) − [a,b]
                if s_ab != 0 {
                    for &(t, v) in &d[ab] {
                        acc.add(t as usize, sa * s_ab * v);
                    }
                }
                for &(t, v) in &d[a] {
                    let (s, u) = self.w(t as usize, b);
                    if s != 0 {
                        acc.add(u, -sa * s * v);
                    }
                }
                for &(t, v) in &d[b] {
                    let (s, u) = self.w(a, t as usize);
                    if s != 0 {
                        acc.add(u, -s * v);
                    }
                }
                for &(t, v) in &br[a * n + b] {
                    acc.add(t as usize, -v);
                }
                if acc.nonzero_and_clear().is_some() {
                    return Some((Blade(a as u64), Blade(b as u64)));
                }
            }
        }
        None
    }

    /// Graded Jacobi [a,[b,c]] = [[a,b],c] + (−1)^{(|a|−1)(|b|−1)} [b,[a,c]] on every triple.
    pub fn graded_jacobi(&self) -> Option<(Blade, Blade, Blade)> {
        let n = self.size;
        let br = self.bracket_table();
        let mut acc = Accumulator::new(n);
        for a in 0..n {
            let pa = (a as u32).count_ones() as usize;
            for b in 0..n {
                let pb = (b as u32).count_ones() as usize;
                let sgn = if (pa + 1) * (pb + 1) % 2 == 1 { -1 } else { 1 };
                let ab = &br[a * n + b];
                for c in 0..n {
                    for &(t, v) in &br[b * n + c] {
                        for &(u, x) in &br[a * n + t as usize] {
                            acc.add(u as usize, v * x);
                        }
                    }
                    for &(t, v) in ab {
                        for &(u, x) in &br[t as usize * n + c] {
                            acc.add(u as usize, -v * x);
                        }
                    }
                    for &(t, v) in &br[a * n + c] {
                        for &(u, x) in &br[b * n + t as usize] {
                            acc.add(u as usize, -sgn * v * x);
                        }
                    }
                    if acc.nonzero_and_clear().is_some() {
                        return Some((Blade(a as u64), Blade(b as u64), Blade(c as u64)));
                    }
                }
            }
        }
        None
    }
}

/// Dense integer accumulator that remembers which slots were touched.
struct Accumulator {
    values: Vec<i64>,
    touched: Vec<usize>,
}

impl Accumulator {
    fn new(n: usize) -> Self {
        Accumulator {
            values: vec![0; n],
            touched: Vec::with_capacity(64),
        }
    }

    #[inline]
    fn add(&mut self, i: usize, x: i64) {
        if self.values[i] == 0 {
            self.touched.push(i);
        }
        self.values[i] += x;
    }

    /// Clears the accumulator, returning some slot that held a nonzero value.
    fn nonzero_and_clear(&mut self) -> Option<usize> {
        let mut bad = None;
        for &i in &self.touched {
            if self.values[i] != 0 && bad.is_none() {
                bad = Some(i);
            }
            self.values[i] = 0;
        }
        self.touched.clear();
        bad
    }
}
