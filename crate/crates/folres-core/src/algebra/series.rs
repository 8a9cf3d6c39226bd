//! Truncated power series and Laurent series over the rationals.
//!
//! A `TruncatedSeries` knows its coefficients for t⁰..t^N exactly and nothing
//! beyond; arithmetic never reports a coefficient above the truncation order.
//! A `LaurentSeries` extends the window below zero: coefficients are known
//! for the exponent window `lowest..=known_through`, are exactly zero below
//! it, and unknown above it. Residue extraction reads the t⁻¹ coefficient.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Power series truncated at a fixed order N (coefficients 0..=N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> TruncatedSeries {
        TruncatedSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(order: usize, c: Rational) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series t.
    pub fn variable(order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn from_coeffs(order: usize, coeffs: &[Rational]) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        for (k, c) in coeffs.iter().take(order + 1).enumerate() {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: Rational) {
        self.coeffs[k] = c;
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, other: &TruncatedSeries) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::TruncationMismatch)
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = TruncatedSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// d/dt; the result is one order shorter, since the top coefficient of
    /// the derivative is not determined by a truncated input.
    pub fn derivative(&self) -> TruncatedSeries {
        assert!(self.order() >= 1, "derivative needs order >= 1");
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        }
    }
}

/// Laurent series: coefficients for the window `lowest..=known_through`,
/// exactly zero below the window, unknown above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    lowest: i64,
    coeffs: Vec<Rational>,
}

impl LaurentSeries {
    /// Builds from a raw window, trimming leading zeros so the lowest stored
    /// coefficient is nonzero unless the series is zero to truncation (in
    /// which case a single zero is kept to remember the window end).
    pub fn new(lowest: i64, coeffs: Vec<Rational>) -> LaurentSeries {
        assert!(!coeffs.is_empty(), "empty Laurent window");
        let mut s = LaurentSeries { lowest, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let mut skip = 0;
        while skip + 1 < self.coeffs.len() && self.coeffs[skip].is_zero() {
            skip += 1;
        }
        if skip > 0 {
            self.coeffs.drain(..skip);
            self.lowest += skip as i64;
        }
    }

    pub fn from_truncated(s: &TruncatedSeries) -> LaurentSeries {
        LaurentSeries::new(0, s.coeffs().to_vec())
    }

    pub fn lowest_exponent(&self) -> i64 {
        self.lowest
    }

    /// Highest exponent whose coefficient is known.
    pub fn known_through(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Exponent of the first nonzero coefficient; `None` when the series is
    /// identically zero up to truncation.
    pub fn order(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| self.lowest + k as i64)
    }

    /// Coefficient at exponent `e`; exponents below the window are exact
    /// zeros. Asking above the window is a caller bug.
    pub fn coeff(&self, e: i64) -> Rational {
        if e < self.lowest {
            return Rational::zero();
        }
        debug_assert!(e <= self.known_through(), "coefficient beyond truncation");
        self.coeffs
            .get((e - self.lowest) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// The t⁻¹ coefficient.
    pub fn residue(&self) -> Rational {
        debug_assert!(self.known_through() >= -1, "residue window not resolved");
        self.coeff(-1)
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        let lowest = self.lowest.min(other.lowest);
        let known = self.known_through().min(other.known_through());
        let len = (known - lowest + 1).max(1) as usize;
        let mut coeffs = vec![Rational::zero(); len];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let e = lowest + k as i64;
            *c = self.coeff(e) + other.coeff(e);
        }
        LaurentSeries::new(lowest, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> LaurentSeries {
        LaurentSeries::new(self.lowest, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        let lowest = self.lowest + other.lowest;
        let known = (self.known_through() + other.lowest)
            .min(other.known_through() + self.lowest);
        let len = (known - lowest + 1).max(1) as usize;
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len && !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentSeries::new(lowest, coeffs)
    }

    /// Multiplicative inverse; errors when the series is zero to truncation.
    pub fn inverse(&self) -> Result<LaurentSeries> {
        let v = self.order().ok_or(Error::PoleOrderOverflow)?;
        // self = t^v·u with u a unit known through m = known_through − v.
        let m = (self.known_through() - v) as usize;
        let unit: Vec<Rational> =
            (0..=m as i64).map(|k| self.coeff(v + k)).collect();
        let mut inv = vec![Rational::zero(); m + 1];
        inv[0] = Rational::one() / &unit[0];
        for k in 1..=m {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &unit[j] * &inv[k - j];
            }
            inv[k] = -acc / &unit[0];
        }
        Ok(LaurentSeries::new(-v, inv))
    }

    pub fn div(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        Ok(self.mul(&other.inverse()?))
    }
}

/// Coefficient of t⁻¹ (zero when the pole window sits above −1).
pub fn laurent_residue(s: &LaurentSeries) -> Rational {
    s.residue()
}

/// Lowest exponent with a nonzero coefficient.
pub fn laurent_order(s: &LaurentSeries) -> Result<i64> {
    s.order().ok_or(Error::OrderExceedsTruncation)
}
