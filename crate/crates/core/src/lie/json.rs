//! JSON input for user-supplied Lie bialgebras.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "basis": ["h", "x"],
//!   "brackets": [{"i": 0, "j": 1, "value": [{"k": 1, "coeff": "1"}]}],
//!   "cobracket": {"r_matrix": [{"i": 0, "j": 1, "coeff": "1"}]}
//! }
//! ```
//!
//! Indices are zero-based. `cobracket` is either `{"by_generator": [[terms of δ(e₀)], …]}`
//! or `{"r_matrix": [terms]}`, each term `{"i", "j", "coeff"}` standing for
//! coeff·e_i∧e_j; when omitted the cobracket is zero.

use serde::{Deserialize, Serialize};

use super::{Cobracket, LieAlgebra};
use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::scalar::{parse_rational, Rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgebraSpec {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub cobracket: Option<CobracketSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<LinearTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearTerm {
    pub k: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WedgeTerm {
    pub i: usize,
    pub j: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CobracketSpec {
    ByGenerator(Vec<Vec<WedgeTerm>>),
    RMatrix(Vec<WedgeTerm>),
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    start + column.saturating_sub(1)
}

fn index(i: usize, dim: usize) -> Result<usize> {
    if i < dim {
        Ok(i)
    } else {
        Err(Error::Invalid(format!("generator index {i} out of range for dimension {dim}")))
    }
}

fn bivector(dim: usize, terms: &[WedgeTerm]) -> Result<Multivector<Rational>> {
    let mut v = Multivector::zero(dim);
    for t in terms {
        let (i, j) = (index(t.i, dim)?, index(t.j, dim)?);
        let c = parse_rational(&t.coeff)?;
        let g = |k| Multivector::<Rational>::generator(dim, k);
        v += &(&g(i) * &g(j)).scaled(&c);
    }
    Ok(v)
}

impl BialgebraSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: byte_offset(text, e.line(), e.column()),
            msg: e.to_string(),
        })
    }

    /// Validates Jacobi, then co-Jacobi and the cocycle condition.
    pub fn build(&self) -> Result<(LieAlgebra, Cobracket)> {
        let dim = self.dim;
        if self.basis.len() != dim {
            return Err(Error::Invalid(format!("basis has {} names, dim is {dim}", self.basis.len())));
        }
        let mut brackets = Vec::new();
        for e in &self.brackets {
            let mut v = Multivector::zero(dim);
            for t in &e.value {
                v.add_term(Blade::generator(index(t.k, dim)?), parse_rational(&t.coeff)?);
            }
            brackets.push((index(e.i, dim)?, index(e.j, dim)?, v));
        }
        let g = LieAlgebra::new(self.basis.clone(), &brackets)?;
        let c = match &self.cobracket {
            None => Cobracket::zero(g.clone()),
            Some(CobracketSpec::RMatrix(terms)) => Cobracket::from_r(g.clone(), bivector(dim, terms)?)?,
            Some(CobracketSpec::ByGenerator(rows)) => {
                let values = rows.iter().map(|t| bivector(dim, t)).collect::<Result<Vec<_>>>()?;
                Cobracket::new(g.clone(), values)?
            }
        };
        Ok((g, c))
    }
}
