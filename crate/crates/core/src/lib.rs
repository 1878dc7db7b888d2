//! Exact computations with Gerstenhaber and Batalin–Vilkovisky structures on
//! exterior algebras of Lie algebras and of polynomial vector fields.

pub mod cohomology;
pub mod error;
pub mod exterior;
pub mod gerstenhaber;
pub mod lie;
pub mod linalg;
pub mod operator;
pub mod poisson;
pub mod scalar;

pub use error::{Error, Result};
pub use exterior::{Blade, Multivector};
pub use scalar::{Poly, Rational};
