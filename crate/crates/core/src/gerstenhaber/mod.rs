//! Gerstenhaber brackets, BV operators, and identity checkers.

mod bv;
pub mod checks;
mod context;
mod schouten;
pub mod tables;

pub use bv::{check_divergence_axioms, divergence_from_delta, BvOperator, Divergence};
pub use checks::{is_strong_differential, CheckReport, StrongDifferentialReport, Witness};
pub use context::GerstenhaberContext;
pub use schouten::{bracket_contraction, schouten_bracket, Adjoint};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::{Anticommutator, GradedBasis, GradedOperator, LinearOperator};

fn failure(report: &CheckReport) -> Error {
    Error::IdentityFailure {
        identity: report.identity.clone(),
        witness: report
            .witness
            .as_ref()
            .map_or_else(String::new, |w| format!("({}): {} ≠ {}", w.inputs.join(", "), w.lhs, w.rhs)),
    }
}

/// ∂Δ + Δ∂ materialized from `domain` to `codomain`. Checks first that ∂ is a
/// strong differential on the domain basis, then that the result is a
/// derivation of the product on all pairs of domain basis elements.
pub fn anticommutator<C: GerstenhaberContext>(
    bv: &BvOperator<C>,
    d: &impl GradedOperator<C::Scalar>,
    domain: Arc<GradedBasis>,
    codomain: Arc<GradedBasis>,
) -> Result<LinearOperator> {
    let ctx = bv.context();
    let elems: Vec<_> = (0..=domain.top_degree()).flat_map(|k| domain.elements::<C::Scalar>(k)).collect();
    let strong = is_strong_differential(d, ctx, &elems);
    if let Some(r) = strong.first_failure() {
        return Err(failure(r));
    }
    let anti = Anticommutator { a: d, b: bv };
    let leibniz = checks::check_product_derivation(&anti, &elems, &ctx.generator_names(), "(∂Δ + Δ∂)");
    if !leibniz.holds {
        return Err(failure(&leibniz));
    }
    LinearOperator::materialize(&anti, domain, codomain)
}
