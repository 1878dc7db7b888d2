use crate::exterior::Multivector;
use crate::scalar::Scalar;

/// The data that determines a Gerstenhaber bracket on Λ•_A L for a
/// Lie–Rinehart pair with a free frame e₁..eₙ of L: the bracket of frame
/// generators and the anchor action of each generator on scalars.
///
/// A finite-dimensional Lie algebra is the case A = ℚ with zero anchor.
pub trait GerstenhaberContext: Send + Sync {
    type Scalar: Scalar;

    /// Rank of the frame (number of degree-1 generators).
    fn rank(&self) -> usize;

    /// `[e_i, e_j]` as a degree-1 element.
    fn generator_bracket(&self, i: usize, j: usize) -> Multivector<Self::Scalar>;

    /// `e_i(f)`.
    fn anchor(&self, i: usize, f: &Self::Scalar) -> Self::Scalar;

    /// True when every generator acts by zero on scalars.
    fn has_zero_anchor(&self) -> bool;

    fn generator_names(&self) -> Vec<String>;

    /// Jacobi identity for the bracket of generators; returns a witness (i, j, k) on failure.
    fn jacobi_witness(&self) -> Option<(usize, usize, usize)>;

    fn text(&self, v: &Multivector<Self::Scalar>) -> String {
        v.to_text(&self.generator_names())
    }
}
