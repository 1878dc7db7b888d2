use gbv_core::cohomology::{cohomology, compare_full_vs_invariant};
use gbv_core::Result;
use serde_json::json;

use crate::input::{degree_range, load};
use crate::{CohomologyArgs, Format, Outcome};

pub fn run(args: &CohomologyArgs) -> Result<Outcome> {
    let l = load(&args.source)?;
    let complex = l.cobracket.complex()?;
    let top = complex.num_degrees() - 1;
    let degrees = match &args.degrees {
        Some(t) => degree_range(t, top)?,
        None => (0..=top).collect(),
    };
    let json = args.source.format == Format::Json;
    if !args.invariant {
        let rep = cohomology(&complex).restricted(&degrees);
        if json {
            let value = json!({ "structure": l.label, "cohomology": rep.to_json() });
            return Ok(Outcome::json(&value, true));
        }
        return Ok(Outcome::new(format!("structure: {}\n{}", l.label, rep.to_table()), true));
    }
    let ext = l.cobracket.intrinsic_biderivation()?.extension().materialize();
    let cmp = compare_full_vs_invariant(&complex, ext.blocks(), &degrees)?;
    let ok = cmp.agrees();
    if json {
        let value = json!({ "structure": l.label, "comparison": cmp, "agrees": ok });
        return Ok(Outcome::json(&value, ok));
    }
    let mut out = format!("structure: {}\n\nfull complex\n{}", l.label, cmp.full.to_table());
    out.push_str(&format!("\n𝒟-invariant subcomplex\n{}", cmp.invariant.to_table()));
    out.push_str(&format!("\neigenvalue summands of ∂_𝒟\n{}", cmp.certificate.to_table()));
    let yes = |b: bool| if b { "yes" } else { "no" };
    out.push_str(&format!(
        "\nBetti numbers agree: {}\ninvariant representatives independent in the full complex: {}\n",
        yes(cmp.betti_equal),
        yes(cmp.representatives_independent)
    ));
    Ok(Outcome::new(out, ok))
}
