use std::fs;
use std::path::Path;

use gbv_core::lie::json::BialgebraSpec;
use gbv_core::lie::{preset, preset_label, Cobracket, LieAlgebra};
use gbv_core::scalar::{parse_rational, Rational};
use gbv_core::{Error, Result};

use crate::Source;

pub struct Loaded {
    pub label: String,
    pub preset: Option<String>,
    pub lambda: Option<Rational>,
    pub algebra: LieAlgebra,
    pub cobracket: Cobracket,
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

pub fn load(src: &Source) -> Result<Loaded> {
    let lambda = src.lambda.as_deref().map(parse_rational).transpose()?;
    if let Some(name) = &src.preset {
        if lambda.is_some() && name != "aff2_case3" {
            return Err(Error::Invalid(format!("--lambda only applies to aff2_case3, not {name}")));
        }
        let (algebra, cobracket) = preset(name, lambda.clone())?;
        return Ok(Loaded {
            label: preset_label(name, lambda.as_ref()),
            preset: Some(name.clone()),
            lambda,
            algebra,
            cobracket,
        });
    }
    let path = src.file.as_deref().expect("clap requires --preset or --file");
    if lambda.is_some() {
        return Err(Error::Invalid("--lambda only applies to the aff2_case3 preset".into()));
    }
    let (algebra, cobracket) = BialgebraSpec::parse(&read(path)?)?.build()?;
    Ok(Loaded {
        label: path.display().to_string(),
        preset: None,
        lambda: None,
        algebra,
        cobracket,
    })
}

/// `a..b`, inclusive.
pub fn degree_range(text: &str, top: usize) -> Result<Vec<usize>> {
    let bad = || Error::Invalid(format!("--degrees expects a..b with 0 ≤ a ≤ b ≤ {top}, got `{text}`"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b || b > top {
        return Err(bad());
    }
    Ok((a..=b).collect())
}
