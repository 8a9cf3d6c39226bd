//! Exact arithmetic substrate: rationals, sparse multivariate polynomials,
//! rational functions and truncated power/Laurent series.

pub mod polynomial;
pub mod rational;
pub mod rational_function;
pub mod series;

pub use polynomial::{ArithOp, Monomial, Polynomial, Vars};
pub use rational::Rational;
pub use rational_function::RationalFunction;
pub use series::{laurent_order, laurent_residue, LaurentSeries, TruncatedSeries};
