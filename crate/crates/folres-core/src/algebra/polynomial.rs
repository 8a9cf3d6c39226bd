//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order, so iteration (and hence division, printing and
//! serialization) is deterministic. No zero coefficients are ever stored.

use alloc::borrow::ToOwned;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use alloc::{collections::BTreeMap, format};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::series::TruncatedSeries;
use crate::error::{Error, Result};

/// An ordered, shared list of variable names.
#[derive(Debug, Clone, Eq)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Result<Vars>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidPresentation("empty variable list".to_string()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidPresentation("empty variable name".to_string()));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidPresentation(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Vars(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Variable list with coordinate `i` removed (affine chart restriction).
    pub fn without(&self, i: usize) -> Result<Vars> {
        let names: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, n)| n.clone())
            .collect();
        Vars::new(names)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Exponent vector of a single term.
///
/// The `Ord` implementation is graded lexicographic: total degree first,
/// then left-to-right comparison of exponents, so earlier variables weigh
/// more. `BTreeMap` iteration is ascending; the last key is the leading
/// monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn constant(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Binary operation selector for [`Polynomial::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Polynomial {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Polynomial {
        Polynomial::constant(vars, Rational::one())
    }

    pub fn variable(vars: &Vars, i: usize) -> Polynomial {
        assert!(i < vars.len(), "variable index out of range");
        let mut p = Polynomial::zero(vars);
        p.terms.insert(Monomial::variable(vars.len(), i), Rational::one());
        p
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_constant)
    }

    /// The constant term (zero if absent).
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::constant(self.vars.len()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn same_vars(&self, other: &Polynomial) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    /// Checked arithmetic; errors when the variable lists differ.
    pub fn arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        a.same_vars(b)?;
        Ok(match op {
            ArithOp::Add => a.add_raw(b),
            ArithOp::Sub => a.sub_raw(b),
            ArithOp::Mul => a.mul_raw(b),
        })
    }

    fn add_raw(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub_raw(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    fn mul_raw(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Leading term under graded lex.
    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Division by a single divisor under graded lex.
    ///
    /// Returns `(quotient, remainder)` with `self = quotient·f + remainder`;
    /// no term of the remainder is divisible by the leading monomial of `f`,
    /// so the remainder vanishes exactly when `f` divides `self`.
    pub fn divide_by_single(&self, f: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_vars(f)?;
        if f.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let (fm, fc) = f.leading().expect("nonzero divisor");
        let fm = fm.clone();
        let fc = fc.clone();
        let mut rem = Polynomial::zero(&self.vars);
        let mut quot = Polynomial::zero(&self.vars);
        let mut p = self.clone();
        while let Some((pm, pc)) = p.leading() {
            let pm = pm.clone();
            let pc = pc.clone();
            if fm.divides(&pm) {
                let qm = pm.div(&fm);
                let qc = &pc / &fc;
                // p -= (qc·qm)·f
                for (m, c) in &f.terms {
                    p.add_term(qm.mul(m), -(&qc * c));
                }
                quot.add_term(qm, qc);
            } else {
                p.terms.remove(&pm);
                rem.add_term(pm, pc);
            }
        }
        Ok((quot, rem))
    }

    /// Exact divisibility test.
    pub fn is_divisible_by(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.divide_by_single(f)?.1.is_zero())
    }

    /// Partial derivative with respect to variable `i`.
    pub fn differentiate(&self, i: usize) -> Polynomial {
        assert!(i < self.vars.len(), "variable index out of range");
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_owned();
            exps[i] = e - 1;
            out.add_term(Monomial::new(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Partial derivative by variable name.
    pub fn differentiate_by_name(&self, name: &str) -> Result<Polynomial> {
        let i = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.differentiate(i))
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len(), "point arity");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            total += v;
        }
        total
    }

    /// Gradient at a rational point.
    pub fn gradient_at(&self, point: &[Rational]) -> Vec<Rational> {
        (0..self.vars.len()).map(|i| self.differentiate(i).evaluate(point)).collect()
    }

    /// Exact composition with truncated series, one per variable, all at the
    /// same truncation order.
    pub fn evaluate_series(&self, point: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        if point.len() != self.vars.len() {
            return Err(Error::TruncationMismatch);
        }
        let order = point.first().map(TruncatedSeries::order).unwrap_or(0);
        if point.iter().any(|s| s.order() != order) {
            return Err(Error::TruncationMismatch);
        }
        // Memoized powers per variable, up to the largest exponent used.
        let mut powers: Vec<Vec<TruncatedSeries>> =
            point.iter().map(|s| vec![TruncatedSeries::constant(order, Rational::one()), s.clone()]).collect();
        let mut total = TruncatedSeries::zero(order);
        for (m, c) in &self.terms {
            let mut term = TruncatedSeries::constant(order, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&point[i])?;
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e as usize])?;
                }
            }
            total = total.add(&term)?;
        }
        Ok(total)
    }

    /// General substitution: variable `i` is replaced by `images[i]`, all
    /// images over a common target variable list.
    pub fn substitute_all(&self, images: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .ok_or(Error::VariableMismatch)?;
        for im in images {
            if im.vars != target {
                return Err(Error::VariableMismatch);
            }
        }
        let mut total = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul_raw(&images[i]);
                }
            }
            total = total.add_raw(&term);
        }
        Ok(total)
    }

    /// Sets variable `i` to a rational constant, keeping the variable list.
    pub fn substitute_var(&self, i: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value;
            }
            let mut exps = m.exponents().to_owned();
            exps[i] = 0;
            out.add_term(Monomial::new(exps), coeff);
        }
        out
    }

    /// Drops variable `i` (which must not occur) from the variable list.
    pub fn drop_var(&self, i: usize) -> Result<Polynomial> {
        let vars = self.vars.without(i)?;
        let mut out = Polynomial::zero(&vars);
        for (m, c) in &self.terms {
            if m.exponents()[i] != 0 {
                return Err(Error::InvalidPresentation(format!(
                    "variable `{}` still occurs",
                    self.vars.name(i)
                )));
            }
            let exps: Vec<u32> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, &e)| e)
                .collect();
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// True when every term has total degree `d`.
    pub fn is_homogeneous_of(&self, d: u64) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    /// Degree-1 check: affine-linear polynomial.
    pub fn is_affine_linear(&self) -> bool {
        self.total_degree().map(|d| d <= 1).unwrap_or(true)
    }

    /// Coefficient of variable `i` in an affine-linear polynomial.
    pub fn linear_coefficient(&self, i: usize) -> Rational {
        self.terms
            .get(&Monomial::variable(self.vars.len(), i))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::arith(self, rhs, ArithOp::Add).expect("variable lists differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::arith(self, rhs, ArithOp::Sub).expect("variable lists differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::arith(self, rhs, ArithOp::Mul).expect("variable lists differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading term first.
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_constant() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_owned()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    pub(crate) fn xyz() -> Vars {
        Vars::new(["x", "y", "z"]).unwrap()
    }

    fn x(vars: &Vars) -> Polynomial {
        Polynomial::variable(vars, 0)
    }
    fn y(vars: &Vars) -> Polynomial {
        Polynomial::variable(vars, 1)
    }
    fn z(vars: &Vars) -> Polynomial {
        Polynomial::variable(vars, 2)
    }

    #[test]
    fn difference_of_squares() {
        let v = xyz();
        let (x, y) = (x(&v), y(&v));
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_identity() {
        let v = xyz();
        let p = &(&x(&v) * &y(&v)) + &Polynomial::constant(&v, rat(7));
        assert_eq!(&p + &Polynomial::zero(&v), p);
    }

    #[test]
    fn monomial_product() {
        let v = xyz();
        let p = y(&v).scale(&rat(2));
        let q = &(&p * &z(&v)) * &x(&v);
        // 2yz · x = 2xyz
        let expected = Polynomial::from_terms(
            &v,
            [(Monomial::new(alloc::vec![1, 1, 1]), rat(2))],
        );
        assert_eq!(q, expected);
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let v = xyz();
        let w = Vars::new(["s", "t"]).unwrap();
        let err = Polynomial::arith(&x(&v), &Polynomial::variable(&w, 0), ArithOp::Add);
        assert_eq!(err.unwrap_err(), Error::VariableMismatch);
    }

    #[test]
    fn division_exact_factor() {
        let v = xyz();
        // x²y − xy² = (x − y)·xy
        let p = &(&(&x(&v) * &x(&v)) * &y(&v)) - &(&x(&v) * &(&y(&v) * &y(&v)));
        let f = &x(&v) * &y(&v);
        let (q, r) = p.divide_by_single(&f).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, &x(&v) - &y(&v));
    }

    #[test]
    fn division_with_remainder() {
        let v = xyz();
        let p = &(&x(&v) * &x(&v)) + &(&y(&v) * &y(&v));
        let (q, r) = p.divide_by_single(&x(&v)).unwrap();
        assert_eq!(r, &y(&v) * &y(&v));
        assert_eq!(q, x(&v));
        assert!(!p.is_divisible_by(&x(&v)).unwrap());
    }

    #[test]
    fn division_monomial_coefficient() {
        let v = xyz();
        let p = &(&x(&v) * &z(&v)).scale(&rat(3)) * &x(&v); // 3x²z
        let (q, r) = p.divide_by_single(&x(&v)).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, (&x(&v) * &z(&v)).scale(&rat(3)));
    }

    #[test]
    fn division_by_zero() {
        let v = xyz();
        let err = x(&v).divide_by_single(&Polynomial::zero(&v));
        assert_eq!(err.unwrap_err(), Error::DivisionByZeroPolynomial);
    }

    #[test]
    fn partial_derivatives() {
        let v = xyz();
        let p = (&y(&v) * &z(&v)).scale(&rat(2)); // 2yz
        assert_eq!(p.differentiate(1), z(&v).scale(&rat(2)));

        // ∂(x²y³z⁴)/∂x = 2xy³z⁴
        let m = Polynomial::from_terms(&v, [(Monomial::new(alloc::vec![2, 3, 4]), rat(1))]);
        let expected = Polynomial::from_terms(&v, [(Monomial::new(alloc::vec![1, 3, 4]), rat(2))]);
        assert_eq!(m.differentiate(0), expected);

        let c = Polynomial::constant(&v, rat(5));
        assert!(c.differentiate(2).is_zero());

        assert!(matches!(
            m.differentiate_by_name("w"),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn display_round_trip_shapes() {
        let v = xyz();
        let p = &(&x(&v) * &x(&v)) - &(&y(&v) * &z(&v)).scale(&crate::algebra::rational::ratio(1, 2));
        assert_eq!(p.to_string(), "x^2 - 1/2*y*z");
        assert_eq!(Polynomial::zero(&v).to_string(), "0");
        assert_eq!((-&x(&v)).to_string(), "-x");
    }

    #[test]
    fn homogeneity_and_chart() {
        let wv = Vars::new(["w", "x", "y", "z"]).unwrap();
        let w = Polynomial::variable(&wv, 0);
        let xh = Polynomial::variable(&wv, 1);
        let q = &(&xh * &xh) - &(&w * &Polynomial::variable(&wv, 3));
        assert!(q.is_homogeneous_of(2));
        assert!(!q.is_homogeneous_of(1));
        let affine = q.substitute_var(0, &rat(1)).drop_var(0).unwrap();
        assert_eq!(affine.vars().names(), ["x", "y", "z"]);
        assert_eq!(affine.to_string(), "x^2 - z");
    }
}
