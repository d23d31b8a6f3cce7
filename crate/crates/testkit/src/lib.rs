//! Random instances and independent oracles shared by the property tests and
//! the acceptance suite.

pub mod macaulay;
pub mod random;
pub mod suite;
