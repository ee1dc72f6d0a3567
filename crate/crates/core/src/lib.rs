//! Exact stability computations for representations of quivers.
//!
//! The crate decides King `theta`-stability of representations over the
//! rationals, tests semisimplicity of endomorphism algebras, and synthesises
//! a common stability weight for orthogonal Schur sequences. On Euclidean
//! quivers the synthesis goes through the regular tubes and a defect shift;
//! elsewhere it solves a rational feasibility problem by Fourier-Motzkin
//! elimination.
//!
//! Linear algebra is generic over any exact [`Field`]; the aliases below pin
//! the arbitrary-precision rationals used throughout the pipeline.

pub mod catalog;
pub mod ff;
pub mod format;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod scalar;
pub mod stability;
pub mod synthesis;

pub use linalg::{Matrix, Rref};
pub use quiver::{DimensionVector, Quiver, QuiverClass, Weight};
pub use rep::{Morphism, MorphismBasis, Representation};
pub use scalar::{Field, RationalField};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Dense matrix of [`Rational`]s.
pub type RationalMatrix = Matrix<Rational>;
/// Representation with rational matrices.
pub type RationalRepresentation = Representation<Rational>;
/// Representation with small-integer rational matrices.
pub type SmallRepresentation = Representation<num_rational::Ratio<i64>>;
