use gbv_core::exterior::Multivector;
use gbv_core::gerstenhaber::GerstenhaberContext;
use gbv_core::lie::{preset, preset_label, Biderivation, Cobracket, LieAlgebra};
use gbv_core::linalg::Matrix;
use gbv_core::scalar::{rat, Rational};
use gbv_core::Result;
use serde_json::json;

use crate::input::Loaded;

type Mv = Multivector<Rational>;

pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, header: &[&str]) -> Self {
        Table {
            title: title.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let width = |i: usize| {
            std::iter::once(&self.header)
                .chain(&self.rows)
                .map(|r| r.get(i).map_or(0, |c| c.chars().count()))
                .max()
                .unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.header.len()).map(width).collect();
        let line = |r: &[String]| {
            let cells: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            format!("{}\n", cells.join(" | ").trim_end())
        };
        let mut out = format!("{}\n", self.title);
        out.push_str(&line(&self.header));
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&format!("{}\n", rule.join("-+-")));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "title": self.title, "header": self.header, "rows": self.rows })
    }
}

/// H with 𝒟 = [H,−], if 𝒟 is inner.
pub fn inner_element(g: &LieAlgebra, d: &Biderivation) -> Option<Mv> {
    let n = g.dim();
    let flat = |m: &Matrix| (0..n * n).map(|i| m.get(i / n, i % n).clone()).collect::<Vec<_>>();
    let cols: Vec<Vec<Rational>> = (0..n).map(|i| Some(flat(&g.ad_matrix(&g.generator(i)).ok()?))).collect::<Option<_>>()?;
    let x = Matrix::from_columns(n * n, &cols).solve(&flat(&d.matrix()))?;
    Some(x.iter().enumerate().fold(Mv::zero(n), |acc, (i, c)| acc + g.generator(i).scaled(c)))
}

fn inner_text(g: &LieAlgebra, d: &Biderivation) -> String {
    match inner_element(g, d) {
        Some(h) if h.is_zero() => "0".into(),
        Some(h) => format!("[{}, −]", g.text(&h)),
        None => "not inner".into(),
    }
}

fn generator_table(label: &str, g: &LieAlgebra, c: &Cobracket, d: &Biderivation) -> Table {
    let mut t = Table::new(format!("{label}: δ and 𝒟 on generators (𝒟 = {})", inner_text(g, d)), &["e", "δ(e)", "𝒟(e)"]);
    for (i, name) in g.names().iter().enumerate() {
        t.push(vec![name.clone(), g.text(c.value(i)), g.text(d.image(i))]);
    }
    t
}

fn aff2_table(lambda: &Rational) -> Result<Table> {
    let mut t = Table::new("aff2 = ⟨h, x⟩, [h,x] = x", &["structure", "δ(h)", "δ(x)", "𝒟(h)", "𝒟(x)", "𝒟"]);
    for (name, l) in [("aff2_trivial", None), ("aff2_case2", None), ("aff2_case3", Some(lambda.clone()))] {
        let (g, c) = preset(name, l.clone())?;
        let d = c.intrinsic_biderivation()?;
        t.push(vec![
            preset_label(name, l.as_ref()),
            g.text(c.value(0)),
            g.text(c.value(1)),
            g.text(d.image(0)),
            g.text(d.image(1)),
            inner_text(&g, &d),
        ]);
    }
    Ok(t)
}

fn sl3_table(g: &LieAlgebra, c: &Cobracket) -> Result<Table> {
    let r = c.r().expect("sl3_standard is coboundary");
    let mut t = Table::new(format!("sl3: [r, v] with r = {}", g.text(r)), &["v", "[r, v]"]);
    let rows: [[&str; 2]; 6] = [["h1", "h2"], ["x1", "y1"], ["x2", "y2"], ["x3", "y3"], ["x1", "y2"], ["x2", "y1"]];
    for [a, b] in rows {
        let v = &g.gen(a) * &g.gen(b);
        t.push(vec![g.text(&v), g.text(&g.bracket(r, &v)?)]);
    }
    Ok(t)
}

/// The summary layouts printed by `check`.
pub fn for_structure(l: &Loaded) -> Result<Vec<Table>> {
    let d = l.cobracket.intrinsic_biderivation()?;
    let mut out = vec![generator_table(&l.label, &l.algebra, &l.cobracket, &d)];
    match l.preset.as_deref() {
        Some(p) if p.starts_with("aff2") => out.push(aff2_table(l.lambda.as_ref().unwrap_or(&rat(1, 1)))?),
        Some("sl3_standard") => out.push(sl3_table(&l.algebra, &l.cobracket)?),
        _ => {}
    }
    Ok(out)
}
