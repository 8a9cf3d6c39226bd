//! Exact-arithmetic computation of residues and indices of codimension-one
//! holomorphic foliations.
//!
//! Everything here is computed over the rationals with arbitrary-precision
//! integers: sparse multivariate polynomials, truncated power and Laurent
//! series, differential forms with polynomial or rational-function
//! coefficients, and on top of those the four index engines (variational,
//! GSV, Camacho-Sad, Baum-Bott) together with degree-level verification of
//! the corresponding global residue theorems on projective space.
//!
//! The crate is `no_std` (it only needs `alloc`); IO, job files and the CLI
//! live in the companion `folres` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod foliation;
pub mod forms;
pub mod indices;
pub mod localgeom;
pub mod projective;

pub use algebra::rational::Rational;
pub use algebra::{LaurentSeries, Monomial, Polynomial, RationalFunction, TruncatedSeries, Vars};
pub use error::Error;

/// Default truncation order for series computations.
pub const DEFAULT_TRUNCATION: usize = 16;

/// Hard ceiling for truncation-order escalation.
pub const MAX_TRUNCATION: usize = 256;

/// Default number of randomized attempts for point/plane/curve searches.
pub const DEFAULT_MAX_ATTEMPTS: usize = 8;
