//! Exact computation of local singularity invariants of function germs
//! relative to an analytic variety: Milnor number, multiplicity,
//! Bruce–Roberts number, Lê number, and condition checks on one-parameter
//! deformations.
//!
//! The algebra is generic over an exact [`Scalar`] field. The aliases at the
//! crate root fix it to arbitrary-precision rationals, which is what the
//! command-line front end uses.

pub mod arcs;
pub mod error;
pub mod families;
pub mod invariants;
pub mod poly;
pub mod scalar;

pub use arcs::{Outcome, Valuation};
pub use error::{Error, ParseError, Result};
pub use invariants::{Count, LocalOptions};
pub use poly::{Monomial, MonomialOrder, PolyRing, QuotientDim, WeightSystem};
pub use scalar::Scalar;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Rational with `i64` numerator and denominator; panics on overflow.
pub type SmallRational = num_rational::Rational64;

pub type Polynomial = poly::Polynomial<Rational>;
pub type StandardBasis = poly::StandardBasis<Rational>;
pub type VectorField = invariants::VectorField<Rational>;
pub type VarietyGerm = invariants::VarietyGerm<Rational>;
pub type Deformation = families::Deformation<Rational>;
pub type SampleSet = families::SampleSet<Rational>;
pub type TruncatedSeries = arcs::TruncatedSeries<Rational>;
pub type ArcCurve = arcs::ArcCurve<Rational>;
