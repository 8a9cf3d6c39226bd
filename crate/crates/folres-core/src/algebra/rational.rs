//! Scalar field: exact rationals with arbitrary-precision integers.
//!
//! `Rational` keeps gcd(|numerator|, denominator) = 1 with a positive
//! denominator, and the canonical zero is 0/1 — exactly the normal form
//! maintained by `num_rational::BigRational`, which backs the type.

use alloc::string::ToString;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair. Panics on a zero denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or a plain integer "p".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((_, den)) = s.split_once('/') {
        if den.trim().trim_start_matches('-').trim_start_matches('0').is_empty()
            && den.trim().chars().all(|c| c == '0' || c == '-')
        {
            return Err(Error::InvalidPresentation("zero denominator".to_string()));
        }
    }
    Rational::from_str(s)
        .map_err(|e| Error::InvalidPresentation(alloc::format!("bad rational `{s}`: {e}")))
}
