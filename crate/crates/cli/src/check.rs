use std::thread;

use gbv_core::exterior::{Blade, Multivector};
use gbv_core::gerstenhaber::checks::{
    check_bracket_generation, check_graded_jacobi, check_seven_term, check_square_zero, CheckReport,
};
use gbv_core::gerstenhaber::{is_strong_differential, GerstenhaberContext};
use gbv_core::lie::{Cobracket, LieAlgebra};
use gbv_core::poisson::{bider_reports, random_poly, PoissonBivector, TruncationWindow};
use gbv_core::scalar::Rational;
use gbv_core::Result;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::input::{load, Loaded};
use crate::{tables, Format, Outcome, Source};

pub const BIDER_CASES: usize = 50;
pub const BIDER_DEGREE: usize = 3;

pub struct Suite {
    pub name: &'static str,
    pub reports: Vec<CheckReport>,
}

impl Suite {
    fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.holds)
    }
}

fn from_witness<T>(id: &str, w: Option<T>, show: impl Fn(T) -> Vec<String>) -> CheckReport {
    match w {
        None => CheckReport::pass(id),
        Some(t) => CheckReport::fail(id, show(t), "nonzero".into(), "0".into()),
    }
}

fn blade_text(g: &LieAlgebra, b: Blade) -> String {
    Multivector::<Rational>::blade(g.dim(), b).to_text(g.names())
}

fn lie_suite(g: &LieAlgebra) -> Suite {
    let names = g.names();
    let mut reports = vec![from_witness("Jacobi", g.jacobi_witness(), |(i, j, k)| {
        vec![names[i].clone(), names[j].clone(), names[k].clone()]
    })];
    let triple = |(a, b, c): (Blade, Blade, Blade)| vec![blade_text(g, a), blade_text(g, b), blade_text(g, c)];
    match g.blade_tables() {
        Ok(t) => {
            reports.push(t.delta_squared(names));
            reports.push(from_witness("seven-term identity", t.seven_term(), triple));
            reports.push(from_witness("[a,b]_Δ = [a,b]", t.bracket_generation(), |(a, b)| {
                vec![blade_text(g, a), blade_text(g, b)]
            }));
            reports.push(from_witness("graded Jacobi", t.graded_jacobi(), triple));
        }
        Err(_) => {
            let ce = g.chevalley_eilenberg();
            let elems = g.exterior_basis();
            reports.push(check_square_zero(&ce, &elems, names, "Δ"));
            reports.push(check_seven_term(&ce, &elems, names));
            reports.push(check_bracket_generation(&ce, &elems));
            reports.push(check_graded_jacobi(g, &elems));
        }
    }
    Suite { name: "Gerstenhaber/BV on Λ•𝔤", reports }
}

fn cobracket_suite(g: &LieAlgebra, c: &Cobracket) -> Suite {
    let names = g.names();
    let mut reports = vec![
        from_witness("co-Jacobi", c.co_jacobi_witness(), |i| vec![names[i].clone()]),
        from_witness("1-cocycle", c.cocycle_witness(), |(i, j)| vec![names[i].clone(), names[j].clone()]),
    ];
    let strong = is_strong_differential(&c.d_delta(), g, &g.exterior_basis());
    reports.extend(strong.reports().into_iter().map(|r| CheckReport {
        identity: format!("d_δ: {}", r.identity),
        ..r.clone()
    }));
    Suite { name: "cobracket and d_δ", reports }
}

fn biderivation_suite(c: &Cobracket) -> Result<Suite> {
    let d = c.intrinsic_biderivation()?;
    let mut reports = vec![
        c.anticommutator_report(&d),
        d.bracket_derivation_report(),
        d.coderivation_report(c),
    ];
    reports.extend(d.adjoint_report());
    Ok(Suite { name: "intrinsic biderivation 𝒟", reports })
}

/// Δd_Π + d_ΠΔ on `cases` seeded random planar bivectors f∂x∧∂y.
pub fn bider_suite(seed: u64, cases: usize) -> Result<Suite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = TruncationWindow::new(2)?;
    let ids = ["Δd_Π + d_ΠΔ = [X_Δ,−]", "Δd_Π + d_ΠΔ is a product derivation"];
    let mut reports: Vec<CheckReport> = ids
        .iter()
        .map(|id| CheckReport::pass(format!("{id} ({cases} random f, deg ≤ {BIDER_DEGREE}, N = 2, seed {seed})")))
        .collect();
    for _ in 0..cases {
        let f = random_poly(&mut rng, 2, BIDER_DEGREE);
        let p = PoissonBivector::planar(f.clone());
        for (slot, r) in reports.iter_mut().zip(bider_reports(&p, w)?) {
            if slot.holds && !r.holds {
                let mut r = r;
                r.identity = format!("{} (f = {f})", slot.identity);
                *slot = r;
            }
        }
    }
    Ok(Suite { name: "Poisson bivectors on ℚ²", reports })
}

/// Runs the suites on separate threads and returns them in a fixed order.
fn run_suites(l: &Loaded, seed: u64) -> Result<Vec<Suite>> {
    let (g, c) = (&l.algebra, &l.cobracket);
    thread::scope(|s| {
        let a = s.spawn(|| lie_suite(g));
        let b = s.spawn(|| cobracket_suite(g, c));
        let d = s.spawn(|| biderivation_suite(c));
        let p = s.spawn(|| bider_suite(seed, BIDER_CASES));
        Ok(vec![
            a.join().expect("suite thread"),
            b.join().expect("suite thread"),
            d.join().expect("suite thread")?,
            p.join().expect("suite thread")?,
        ])
    })
}

pub fn run(src: &Source) -> Result<Outcome> {
    let l = load(src)?;
    let suites = run_suites(&l, src.seed)?;
    let ok = suites.iter().all(Suite::passed);
    let layout = tables::for_structure(&l)?;
    if src.format == Format::Json {
        let value = json!({
            "structure": l.label,
            "seed": src.seed,
            "passed": ok,
            "suites": suites.iter().map(|s| json!({
                "suite": s.name,
                "reports": s.reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "tables": layout.iter().map(tables::Table::to_json).collect::<Vec<_>>(),
        });
        return Ok(Outcome::json(&value, ok));
    }
    let mut out = format!("structure: {}\n", l.label);
    for s in &suites {
        out.push_str(&format!("\n[{}]\n", s.name));
        for r in &s.reports {
            out.push_str(&r.line());
            out.push('\n');
        }
    }
    for t in &layout {
        out.push('\n');
        out.push_str(&t.render());
    }
    let total: usize = suites.iter().map(|s| s.reports.len()).sum();
    let failed = suites.iter().flat_map(|s| &s.reports).filter(|r| !r.holds).count();
    out.push_str(&if ok { format!("\nall {total} checks pass\n") } else { format!("\n{failed} of {total} checks fail\n") });
    if let Some(first) = suites.iter().flat_map(|s| &s.reports).find(|r| !r.holds) {
        out.push_str(&format!("first failure: {}\n", first.line()));
    }
    Ok(Outcome::new(out, ok))
}
