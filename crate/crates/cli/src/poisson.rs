use gbv_core::cohomology::cohomology;
use gbv_core::exterior::Multivector;
use gbv_core::gerstenhaber::checks::CheckReport;
use gbv_core::gerstenhaber::schouten_bracket;
use gbv_core::poisson::{
    bider_reports, parse_bivector_json, rotation_invariant_subcomplex, unimodularity_probe, window_complex, PlanarFields,
    PoissonBivector, PolyLieRinehart, TruncationWindow,
};
use gbv_core::scalar::{rat, Poly};
use gbv_core::{Error, Result};
use serde_json::json;

use crate::input::read;
use crate::tables::Table;
use crate::{Format, Outcome, PoissonArgs};

type Mvp = Multivector<Poly>;

fn load(args: &PoissonArgs) -> Result<(String, PoissonBivector)> {
    if let Some(name) = &args.preset {
        return match name.as_str() {
            "r2_squared" => Ok((name.clone(), PlanarFields::new().bivector())),
            other => Err(Error::UnknownPreset(other.to_string())),
        };
    }
    if let Some(f) = &args.bivector {
        let lr = PolyLieRinehart::planar();
        return Ok((format!("({f}) * dx^dy"), PoissonBivector::planar(lr.parse(f)?)));
    }
    match &args.file {
        Some(path) => Ok((path.display().to_string(), parse_bivector_json(&read(path)?)?)),
        None => Err(Error::Invalid("poisson needs --preset, --bivector or --file".into())),
    }
}

/// One row of the ℝ² relation table: name, computed value, expected value.
fn relation(name: &str, p: &PoissonBivector, got: &Mvp, want: &Mvp) -> Vec<String> {
    let status = if got == want { "PASS" } else { "FAIL" };
    vec![name.to_string(), p.text(got), p.text(want), status.to_string()]
}

fn r2_relations(p: &PoissonBivector) -> Result<Table> {
    let f = PlanarFields::new();
    let lr = *p.context();
    let bv = lr.bv();
    let br = |a: &Mvp, b: &Mvp| schouten_bracket(&lr, a, b);
    let c = |q: i64| Poly::constant(rat(q, 1));
    let zero = |k: usize| Mvp::zero(2).scaled(&c(k as i64));
    let mut t = Table::new(
        "Gerstenhaber and BV structure (∂θ := ½X_Δ = y∂x − x∂y, D_r = x∂x + y∂y, Vol = ∂x∧∂y)",
        &["relation", "computed", "expected", ""],
    );
    t.push(relation("∂θ∧D_r = Π", p, &(&f.theta * &f.d_r), &f.pi));
    t.push(relation("[∂θ, D_r] = 0", p, &br(&f.theta, &f.d_r)?, &zero(0)));
    t.push(relation("[∂θ, Vol] = 0", p, &br(&f.theta, &f.vol)?, &zero(0)));
    t.push(relation("[Π, D_r] = 0", p, &br(&f.pi, &f.d_r)?, &zero(0)));
    t.push(relation("[D_r, Vol] = −2Vol", p, &br(&f.d_r, &f.vol)?, &f.vol.scaled(&c(-2))));
    t.push(relation("Δ(∂θ) = 0", p, &bv.delta(&f.theta), &zero(0)));
    t.push(relation("Δ(D_r) = −2", p, &bv.delta(&f.d_r), &lr.scalar(c(-2))));
    t.push(relation("Δ(Vol) = 0", p, &bv.delta(&f.vol), &zero(0)));
    t.push(relation("Δ(Π) = 2∂θ", p, &bv.delta(&f.pi), &f.theta.scaled(&c(2))));
    Ok(t)
}

pub fn run(args: &PoissonArgs) -> Result<Outcome> {
    let (label, p) = load(args)?;
    let w = TruncationWindow::new(args.max_degree)?;
    let x = p.modular_class()?;
    let probe = unimodularity_probe(&p, w)?;
    let checks: Vec<CheckReport> = bider_reports(&p, TruncationWindow::new(2)?)?.into();
    let r2 = args.preset.as_deref() == Some("r2_squared");
    let (complex_title, complex) = if r2 {
        ("∂θ-invariant subcomplex", rotation_invariant_subcomplex(w)?.complex)
    } else {
        ("window complex (coefficient degree ≤ N + k(p − 1) in degree k)", window_complex(&p, w)?)
    };
    let rep = cohomology(&complex);
    let relations = if r2 { Some(r2_relations(&p)?) } else { None };
    let ok = checks.iter().all(|r| r.holds)
        && relations.as_ref().is_none_or(|t| t.rows.iter().all(|r| r[3] == "PASS"));

    if args.format == Format::Json {
        let value = json!({
            "bivector": p.text(p.pi()),
            "source": label,
            "window": w.max_poly_degree,
            "modular_class": p.text(&x),
            "unimodularity": probe,
            "checks": checks.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
            "complex": complex_title,
            "cohomology": rep.to_json(),
            "relations": relations.as_ref().map(Table::to_json),
        });
        return Ok(Outcome::json(&value, ok));
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = format!("Π = {}\nN = {}\nX_Δ = Δ(Π) = {}\n", p.text(p.pi()), w.max_poly_degree, p.text(&x));
    out.push_str(&format!(
        "\nunimodular within window: {}\n",
        yes(probe.unimodular_within_window)
    ));
    if let Some(a) = &probe.witness {
        out.push_str(&format!("witness a with X_Δ = [Π, a]: {a}\n"));
    }
    out.push_str(&format!("rank {} / augmented rank {}\n{}\n", probe.rank, probe.augmented_rank, probe.note));
    out.push_str("\n[identities on the N = 2 window]\n");
    for r in &checks {
        out.push_str(&r.line());
        out.push('\n');
    }
    out.push_str(&format!("\n{complex_title}\n{}", rep.to_table()));
    if let Some(t) = &relations {
        out.push('\n');
        out.push_str(&t.render());
    }
    Ok(Outcome::new(out, ok))
}
