//! Differential-form calculus with polynomial and rational-function
//! coefficients: exterior derivative, wedge products, integrability defect,
//! hypersurface invariance, and pullbacks to curves and planes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{LaurentSeries, Polynomial, Rational, RationalFunction, TruncatedSeries, Vars};
use crate::error::{Error, Result};

/// ω = Σ aᵢ dzᵢ with polynomial coefficients, one per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyOneForm {
    vars: Vars,
    coeffs: Vec<Polynomial>,
}

impl PolyOneForm {
    pub fn new(vars: &Vars, coeffs: Vec<Polynomial>) -> Result<PolyOneForm> {
        if coeffs.len() != vars.len() {
            return Err(Error::InvalidPresentation(
                "one coefficient per variable required".into(),
            ));
        }
        for c in &coeffs {
            if c.vars() != vars {
                return Err(Error::VariableMismatch);
            }
        }
        Ok(PolyOneForm { vars: vars.clone(), coeffs })
    }

    pub fn zero(vars: &Vars) -> PolyOneForm {
        PolyOneForm {
            vars: vars.clone(),
            coeffs: (0..vars.len()).map(|_| Polynomial::zero(vars)).collect(),
        }
    }

    /// df = Σ ∂f/∂zᵢ dzᵢ.
    pub fn differential(f: &Polynomial) -> PolyOneForm {
        PolyOneForm {
            vars: f.vars().clone(),
            coeffs: (0..f.vars().len()).map(|i| f.differentiate(i)).collect(),
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn coeff(&self, i: usize) -> &Polynomial {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &PolyOneForm) -> Result<PolyOneForm> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        Ok(PolyOneForm {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &PolyOneForm) -> Result<PolyOneForm> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        Ok(PolyOneForm {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// p·ω for a polynomial p.
    pub fn mul_poly(&self, p: &Polynomial) -> PolyOneForm {
        PolyOneForm {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|a| a * p).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyOneForm {
        PolyOneForm {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Value of the coefficient vector at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Vec<Rational> {
        self.coeffs.iter().map(|a| a.evaluate(point)).collect()
    }

    /// True when every coefficient vanishes at the point.
    pub fn vanishes_at(&self, point: &[Rational]) -> bool {
        self.coeffs.iter().all(|a| a.evaluate(point).is_zero())
    }

    pub fn to_mero(&self) -> MeroOneForm {
        MeroOneForm {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().cloned().map(RationalFunction::from_poly).collect(),
        }
    }
}

/// Two-form Σ bᵢⱼ dzᵢ∧dzⱼ keyed by strictly increasing index pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyTwoForm {
    vars: Vars,
    coeffs: BTreeMap<(usize, usize), Polynomial>,
}

impl PolyTwoForm {
    pub fn zero(vars: &Vars) -> PolyTwoForm {
        PolyTwoForm { vars: vars.clone(), coeffs: BTreeMap::new() }
    }

    fn add_coeff(&mut self, key: (usize, usize), p: Polynomial) {
        debug_assert!(key.0 < key.1);
        if p.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &p;
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
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Polynomial {
        debug_assert!(i < j);
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| Polynomial::zero(&self.vars))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(usize, usize), &Polynomial)> {
        self.coeffs.iter()
    }

    pub fn mul_poly(&self, p: &Polynomial) -> PolyTwoForm {
        let mut out = PolyTwoForm::zero(&self.vars);
        for (k, c) in &self.coeffs {
            out.add_coeff(*k, c * p);
        }
        out
    }
}

/// Three-form keyed by strictly increasing index triples.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyThreeForm {
    vars: Vars,
    coeffs: BTreeMap<(usize, usize, usize), Polynomial>,
}

impl PolyThreeForm {
    pub fn zero(vars: &Vars) -> PolyThreeForm {
        PolyThreeForm { vars: vars.clone(), coeffs: BTreeMap::new() }
    }

    fn add_coeff(&mut self, key: (usize, usize, usize), p: Polynomial) {
        debug_assert!(key.0 < key.1 && key.1 < key.2);
        if p.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &p;
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
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> Polynomial {
        self.coeffs
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.vars))
    }
}

/// One-form with rational-function coefficients, for meromorphic pullbacks.
#[derive(Debug, Clone)]
pub struct MeroOneForm {
    vars: Vars,
    coeffs: Vec<RationalFunction>,
}

impl MeroOneForm {
    pub fn new(vars: &Vars, coeffs: Vec<RationalFunction>) -> Result<MeroOneForm> {
        if coeffs.len() != vars.len() {
            return Err(Error::InvalidPresentation(
                "one coefficient per variable required".into(),
            ));
        }
        Ok(MeroOneForm { vars: vars.clone(), coeffs })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn coeff(&self, i: usize) -> &RationalFunction {
        &self.coeffs[i]
    }
}

/// Closed logarithmic part Σ λⱼ dfⱼ/fⱼ plus a holomorphic tail.
#[derive(Debug, Clone)]
pub struct LogarithmicOneForm {
    log_terms: Vec<(Rational, Polynomial)>,
    holomorphic_part: PolyOneForm,
}

impl LogarithmicOneForm {
    /// Poles must be nonconstant and pairwise distinct.
    pub fn new(
        log_terms: Vec<(Rational, Polynomial)>,
        holomorphic_part: PolyOneForm,
    ) -> Result<LogarithmicOneForm> {
        for (k, (_, p)) in log_terms.iter().enumerate() {
            if p.is_constant() {
                return Err(Error::InvalidPresentation("constant pole polynomial".into()));
            }
            if p.vars() != holomorphic_part.vars() {
                return Err(Error::VariableMismatch);
            }
            if log_terms[..k].iter().any(|(_, q)| q == p) {
                return Err(Error::InvalidPresentation("repeated pole polynomial".into()));
            }
        }
        Ok(LogarithmicOneForm { log_terms, holomorphic_part })
    }

    pub fn log_terms(&self) -> &[(Rational, Polynomial)] {
        &self.log_terms
    }

    pub fn holomorphic_part(&self) -> &PolyOneForm {
        &self.holomorphic_part
    }

    /// Residue along the pole divisor {p = 0}, if p is one of the poles.
    pub fn residue_along(&self, p: &Polynomial) -> Option<&Rational> {
        self.log_terms.iter().find(|(_, q)| q == p).map(|(r, _)| r)
    }

    /// The representation is closed iff the holomorphic part is closed.
    pub fn is_closed(&self) -> bool {
        exterior_derivative(&self.holomorphic_part).is_zero()
    }
}

/// d(Σaᵢdzᵢ) = Σᵢ<ⱼ (∂aⱼ/∂zᵢ − ∂aᵢ/∂zⱼ) dzᵢ∧dzⱼ.
pub fn exterior_derivative(omega: &PolyOneForm) -> PolyTwoForm {
    let n = omega.vars().len();
    let mut out = PolyTwoForm::zero(omega.vars());
    for i in 0..n {
        for j in (i + 1)..n {
            let c = &omega.coeff(j).differentiate(i) - &omega.coeff(i).differentiate(j);
            out.add_coeff((i, j), c);
        }
    }
    out
}

/// α∧β of two one-forms.
pub fn wedge_one_one(a: &PolyOneForm, b: &PolyOneForm) -> Result<PolyTwoForm> {
    if a.vars() != b.vars() {
        return Err(Error::VariableMismatch);
    }
    let n = a.vars().len();
    let mut out = PolyTwoForm::zero(a.vars());
    for i in 0..n {
        for j in (i + 1)..n {
            out.add_coeff((i, j), &(a.coeff(i) * b.coeff(j)) - &(a.coeff(j) * b.coeff(i)));
        }
    }
    Ok(out)
}

/// α∧β of a one-form and a two-form.
pub fn wedge_one_two(a: &PolyOneForm, b: &PolyTwoForm) -> Result<PolyThreeForm> {
    if a.vars() != b.vars() {
        return Err(Error::VariableMismatch);
    }
    let n = a.vars().len();
    let mut out = PolyThreeForm::zero(a.vars());
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                // dzᵢ∧(dzⱼ∧dz_k) − dzⱼ∧(dzᵢ∧dz_k) + dz_k∧(dzᵢ∧dzⱼ)
                let mut c = &(a.coeff(i) * &b.coeff(j, k)) - &(a.coeff(j) * &b.coeff(i, k));
                c = &c + &(a.coeff(k) * &b.coeff(i, j));
                out.add_coeff((i, j, k), c);
            }
        }
    }
    Ok(out)
}

/// ω∧dω; zero exactly when ω satisfies the Frobenius condition.
pub fn integrability_defect(omega: &PolyOneForm) -> PolyThreeForm {
    wedge_one_two(omega, &exterior_derivative(omega)).expect("same variable list")
}

/// True when f divides every coefficient of ω∧df, i.e. {f = 0} is a union of
/// leaves away from the singular set. `f` should be nonconstant.
pub fn is_invariant_hypersurface(omega: &PolyOneForm, f: &Polynomial) -> Result<bool> {
    let wedge = wedge_one_one(omega, &PolyOneForm::differential(f))?;
    for (_, c) in wedge.coeffs() {
        if !c.is_divisible_by(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pullback of a rational-coefficient one-form along a series curve:
/// returns the dt-coefficient Σ θᵢ(c(t))·cᵢ'(t) as a Laurent series.
pub fn pullback_to_curve(
    theta: &MeroOneForm,
    curve: &[TruncatedSeries],
) -> Result<LaurentSeries> {
    if curve.len() != theta.vars().len() {
        return Err(Error::TruncationMismatch);
    }
    let order = curve[0].order();
    let mut total: Option<LaurentSeries> = None;
    for (i, coeff) in theta.coeffs.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let dci = curve[i].derivative();
        if dci.is_zero() {
            // An exactly zero velocity contributes nothing; skipping keeps it
            // from narrowing the known window.
            continue;
        }
        let num = coeff.num().evaluate_series(curve)?;
        let den = coeff.den().evaluate_series(curve)?;
        if den.is_zero() {
            return Err(Error::PoleOrderOverflow);
        }
        let value = LaurentSeries::from_truncated(&num)
            .div(&LaurentSeries::from_truncated(&den))?
            .mul(&LaurentSeries::from_truncated(&dci));
        total = Some(match total {
            None => value,
            Some(t) => t.add(&value),
        });
    }
    Ok(total.unwrap_or_else(|| LaurentSeries::new(0, vec![Rational::zero(); order + 1])))
}

/// An affine 2-plane (s,t) ↦ base + s·dir_s + t·dir_t.
#[derive(Debug, Clone)]
pub struct AffinePlane {
    pub base: Vec<Rational>,
    pub dir_s: Vec<Rational>,
    pub dir_t: Vec<Rational>,
}

impl AffinePlane {
    /// The coordinate images zₘ = baseₘ + s·dir_sₘ + t·dir_tₘ as degree-1
    /// polynomials over the plane variables.
    pub fn images(&self, plane_vars: &Vars) -> Vec<Polynomial> {
        let s = Polynomial::variable(plane_vars, 0);
        let t = Polynomial::variable(plane_vars, 1);
        self.base
            .iter()
            .zip(self.dir_s.iter().zip(&self.dir_t))
            .map(|(b, (us, ut))| {
                let mut p = Polynomial::constant(plane_vars, b.clone());
                p = &p + &s.scale(us);
                &p + &t.scale(ut)
            })
            .collect()
    }

    fn is_degenerate(&self) -> bool {
        // rank of the 2×n direction matrix < 2
        let n = self.dir_s.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let det = &self.dir_s[i] * &self.dir_t[j] - &self.dir_s[j] * &self.dir_t[i];
                if !det.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Restricts ω to an affine plane, collecting A ds + B dt exactly.
pub fn restrict_to_plane(
    omega: &PolyOneForm,
    plane: &AffinePlane,
    plane_var_names: (&str, &str),
) -> Result<PolyOneForm> {
    let n = omega.vars().len();
    if plane.base.len() != n || plane.dir_s.len() != n || plane.dir_t.len() != n {
        return Err(Error::DegeneratePlane);
    }
    if plane.is_degenerate() {
        return Err(Error::DegeneratePlane);
    }
    let pv = Vars::new([
        String::from(plane_var_names.0),
        String::from(plane_var_names.1),
    ])?;
    let images = plane.images(&pv);
    let mut a = Polynomial::zero(&pv);
    let mut b = Polynomial::zero(&pv);
    for i in 0..n {
        let pulled = omega.coeff(i).substitute_all(&images)?;
        a = &a + &pulled.scale(&plane.dir_s[i]);
        b = &b + &pulled.scale(&plane.dir_t[i]);
    }
    PolyOneForm::new(&pv, vec![a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::Monomial;

    fn xyz() -> Vars {
        Vars::new(["x", "y", "z"]).unwrap()
    }

    /// 2yz dx + 3xz dy + 4xy dz
    fn example_form(v: &Vars) -> PolyOneForm {
        let x = Polynomial::variable(v, 0);
        let y = Polynomial::variable(v, 1);
        let z = Polynomial::variable(v, 2);
        PolyOneForm::new(
            v,
            vec![
                (&y * &z).scale(&rat(2)),
                (&x * &z).scale(&rat(3)),
                (&x * &y).scale(&rat(4)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn exterior_derivative_of_example() {
        let v = xyz();
        let d = exterior_derivative(&example_form(&v));
        let x = Polynomial::variable(&v, 0);
        let y = Polynomial::variable(&v, 1);
        let z = Polynomial::variable(&v, 2);
        assert_eq!(d.coeff(0, 1), z);
        assert_eq!(d.coeff(0, 2), y.scale(&rat(2)));
        assert_eq!(d.coeff(1, 2), x);
    }

    #[test]
    fn d_squared_vanishes() {
        let v = xyz();
        let f = Polynomial::from_terms(&v, [(Monomial::new(alloc::vec![2, 3, 4]), rat(1))]);
        assert!(exterior_derivative(&PolyOneForm::differential(&f)).is_zero());
        assert!(exterior_derivative(&PolyOneForm::zero(&v)).is_zero());
    }

    #[test]
    fn integrability_of_example_and_negative_control() {
        let v = xyz();
        assert!(integrability_defect(&example_form(&v)).is_zero());

        // y dx + x dy = d(xy) is closed, hence integrable.
        let x = Polynomial::variable(&v, 0);
        let y = Polynomial::variable(&v, 1);
        let z = Polynomial::variable(&v, 2);
        let closed =
            PolyOneForm::new(&v, vec![y.clone(), x.clone(), Polynomial::zero(&v)]).unwrap();
        assert!(integrability_defect(&closed).is_zero());

        // z dx + x dy + y dz has defect (x + y + z)·dx∧dy∧dz.
        let contact = PolyOneForm::new(&v, vec![z.clone(), x.clone(), y.clone()]).unwrap();
        let defect = integrability_defect(&contact);
        assert!(!defect.is_zero());
        assert_eq!(defect.coeff(0, 1, 2), &(&x + &y) + &z);
    }

    #[test]
    fn invariance_of_coordinate_hyperplane() {
        let v = xyz();
        let omega = example_form(&v);
        let x = Polynomial::variable(&v, 0);
        assert!(is_invariant_hypersurface(&omega, &x).unwrap());
        let shifted = &x - &Polynomial::one(&v);
        assert!(!is_invariant_hypersurface(&omega, &shifted).unwrap());
    }

    #[test]
    fn differential_hypersurface_is_invariant() {
        let v = xyz();
        let x = Polynomial::variable(&v, 0);
        let y = Polynomial::variable(&v, 1);
        let f = &(&x * &x) - &y;
        assert!(is_invariant_hypersurface(&PolyOneForm::differential(&f), &f).unwrap());
    }

    #[test]
    fn pullback_of_log_differential() {
        let v = xyz();
        let z = Polynomial::variable(&v, 2);
        // dz/z along (1, 0, t) has residue 1
        let theta = MeroOneForm::new(
            &v,
            vec![
                RationalFunction::from_poly(Polynomial::zero(&v)),
                RationalFunction::from_poly(Polynomial::zero(&v)),
                RationalFunction::new(Polynomial::one(&v), z).unwrap(),
            ],
        )
        .unwrap();
        let n = 8;
        let curve = alloc::vec![
            TruncatedSeries::constant(n, rat(1)),
            TruncatedSeries::zero(n),
            TruncatedSeries::variable(n),
        ];
        let s = pullback_to_curve(&theta, &curve).unwrap();
        assert_eq!(s.residue(), rat(1));
        assert_eq!(s.order().unwrap(), -1);
    }

    #[test]
    fn plane_restriction_of_example() {
        let v = xyz();
        let omega = example_form(&v);
        // Plane x = 1 parametrized by (s,t) = (y,z).
        let plane = AffinePlane {
            base: alloc::vec![rat(1), rat(0), rat(0)],
            dir_s: alloc::vec![rat(0), rat(1), rat(0)],
            dir_t: alloc::vec![rat(0), rat(0), rat(1)],
        };
        let restricted = restrict_to_plane(&omega, &plane, ("s", "t")).unwrap();
        // ω|_D = 3z dy + 4y dz = 3t ds + 4s dt
        let pv = restricted.vars().clone();
        let s = Polynomial::variable(&pv, 0);
        let t = Polynomial::variable(&pv, 1);
        assert_eq!(restricted.coeff(0), &t.scale(&rat(3)));
        assert_eq!(restricted.coeff(1), &s.scale(&rat(4)));
    }

    #[test]
    fn degenerate_plane_is_rejected() {
        let v = xyz();
        let plane = AffinePlane {
            base: alloc::vec![rat(0), rat(0), rat(0)],
            dir_s: alloc::vec![rat(1), rat(2), rat(0)],
            dir_t: alloc::vec![rat(2), rat(4), rat(0)],
        };
        assert_eq!(
            restrict_to_plane(&example_form(&v), &plane, ("s", "t")).unwrap_err(),
            Error::DegeneratePlane
        );
    }

    #[test]
    fn plane_restriction_commutes_with_d() {
        // ω = df restricted equals d(f∘plane).
        let v = xyz();
        let x = Polynomial::variable(&v, 0);
        let y = Polynomial::variable(&v, 1);
        let z = Polynomial::variable(&v, 2);
        let f = &(&x * &(&y * &y)) - &(&z * &x).scale(&rat(5));
        let plane = AffinePlane {
            base: alloc::vec![rat(1), rat(-2), rat(3)],
            dir_s: alloc::vec![rat(1), rat(0), rat(2)],
            dir_t: alloc::vec![rat(0), rat(1), rat(-1)],
        };
        let lhs = restrict_to_plane(&PolyOneForm::differential(&f), &plane, ("s", "t")).unwrap();
        let pv = lhs.vars().clone();
        let f_on_plane = f.substitute_all(&plane.images(&pv)).unwrap();
        let rhs = PolyOneForm::differential(&f_on_plane);
        assert_eq!(lhs, rhs);
    }
}
