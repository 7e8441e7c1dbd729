//! Exact finite-rank computations for the Cayley-tree Fredholm module of a
//! free group.
//!
//! The library builds the unitary `P: L²(G) -> L²(E) ⊕ ℂ` coming from the
//! geodesic edge bijection of the Cayley tree, assembles exact matrices of
//! the defect operators `sPb - aPt` and `sP⁻¹b - aP⁻¹t` for quadruples over
//! the group algebra, and measures commutation defects of coefficient
//! streams on growing windows. Noncommutative rational expressions can be
//! parsed, compiled to linear systems and expanded into such streams.
//!
//! All core types are generic over a [`Scalar`] field; the aliases below fix
//! the exact Gaussian rationals used for certified rank verdicts.

pub mod algebra;
pub mod criterion;
pub mod fredholm;
pub mod freegroup;
pub mod linalg;
pub mod rational;
pub mod scalar;

pub use freegroup::{EdgeOrStar, GeneratorSet, GroupError, ReducedWord, StarConvention};
pub use num_complex::Complex64;
pub use scalar::{GaussianRational, Scalar};

/// Exact complex scalars `p/q + (r/s)i`.
pub type ExactComplex = GaussianRational;
/// Group algebra elements with exact coefficients.
pub type Element = algebra::GroupAlgebraElement<ExactComplex>;
/// Group algebra elements with double-precision complex coefficients.
pub type Element64 = algebra::GroupAlgebraElement<num_complex::Complex64>;
pub type GVector = algebra::GVector<ExactComplex>;
pub type EVector = algebra::EVector<ExactComplex>;
pub type DefectMatrix = fredholm::DefectMatrix<ExactComplex>;
