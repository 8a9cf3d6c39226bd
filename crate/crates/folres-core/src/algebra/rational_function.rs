//! Quotients of polynomials.
//!
//! Representations stay unreduced: there is no multivariate gcd here.
//! Equality is tested by cross-multiplication, and the only simplification
//! on offer is exact cancellation through single-divisor division.

use core::fmt;

use super::polynomial::Polynomial;
use super::rational::Rational;
use super::series::LaurentSeries;
use super::TruncatedSeries;
use crate::error::{Error, Result};

/// numerator / denominator with a nonzero denominator.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if num.vars() != den.vars() {
            return Err(Error::VariableMismatch);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        let one = Polynomial::one(p.vars());
        RationalFunction { num: p, den: one }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Equality by cross-multiplication.
    pub fn eq_cross(&self, other: &RationalFunction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Cancels the denominator when it divides the numerator exactly.
    pub fn simplified(&self) -> RationalFunction {
        if self.num.is_zero() {
            return RationalFunction::from_poly(Polynomial::zero(self.num.vars()));
        }
        match self.num.divide_by_single(&self.den) {
            Ok((q, r)) if r.is_zero() => RationalFunction::from_poly(q),
            _ => self.clone(),
        }
    }

    /// Pullback along a series point: num(c(t)) / den(c(t)) as a Laurent
    /// series. Errors with `PoleOrderOverflow` when the denominator vanishes
    /// to full truncation depth.
    pub fn evaluate_series(&self, point: &[TruncatedSeries]) -> Result<LaurentSeries> {
        let n = LaurentSeries::from_truncated(&self.num.evaluate_series(point)?);
        let d = LaurentSeries::from_truncated(&self.den.evaluate_series(point)?);
        n.div(&d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one(self.den.vars()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::polynomial::Vars;
    use crate::algebra::rational::rat;

    #[test]
    fn cross_equality_and_simplification() {
        let v = Vars::new(["x", "y", "z"]).unwrap();
        let x = Polynomial::variable(&v, 0);
        let y = Polynomial::variable(&v, 1);
        // (x²y)/(x) == (xy)/1
        let a = RationalFunction::new(&(&x * &x) * &y, x.clone()).unwrap();
        let b = RationalFunction::from_poly(&x * &y);
        assert!(a.eq_cross(&b));
        assert!(a.simplified().eq_cross(&b));
        assert_eq!(a.simplified().den(), &Polynomial::one(&v));
        // x/y stays unreduced
        let c = RationalFunction::new(x.clone(), y.clone()).unwrap();
        assert_eq!(c.simplified().den(), &y);
        assert!(RationalFunction::new(x, Polynomial::zero(&v)).is_err());
    }

    #[test]
    fn series_pullback_divides() {
        let v = Vars::new(["x", "y", "z"]).unwrap();
        let y = Polynomial::variable(&v, 1);
        let one = Polynomial::one(&v);
        // 1/y along (1, t, 0) is t⁻¹
        let f = RationalFunction::new(one, y).unwrap();
        let n = 6;
        let point = alloc::vec![
            TruncatedSeries::constant(n, rat(1)),
            TruncatedSeries::variable(n),
            TruncatedSeries::zero(n),
        ];
        let s = f.evaluate_series(&point).unwrap();
        assert_eq!(s.order().unwrap(), -1);
        assert_eq!(s.residue(), rat(1));
    }
}
