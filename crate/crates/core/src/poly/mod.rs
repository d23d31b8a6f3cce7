//! Exact sparse multivariate polynomials, monomial orderings and
//! standard bases.

mod basis;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use basis::{
    ideal_membership, normal_form, quotient_dimension, standard_basis, QuotientDim, StandardBasis,
    DEFAULT_DIM_BOUND,
};
pub use monomial::Monomial;
pub use order::{MonomialOrder, WeightSystem};
pub use parse::{parse_expression, parse_polynomial};
pub use polynomial::Polynomial;
pub use ring::{PolyRing, ARC_PARAMETER, DEFORMATION_PARAMETER};
