//! Finite-dimensional Lie algebras, Lie bialgebra cobrackets, and the
//! intrinsic biderivation.

mod algebra;
mod bialgebra;
pub mod json;
mod presets;

pub use algebra::LieAlgebra;
pub use bialgebra::{Biderivation, Cobracket, DerivationExtension};
pub use presets::{aff2, preset, preset_label, sl2, sl3, PRESET_NAMES};
