//! Certified local geometry at singular components: generic-point selection,
//! transverse curve lifting inside hypersurfaces (order-by-order Newton),
//! transverse 2-plane construction, and vanishing orders along curves.
//!
//! Genericity is certified, never assumed: every chosen point carries exact,
//! re-checkable witnesses (membership, a nonzero 2×2 Jacobian minor, nonzero
//! values of the polynomials it must avoid), so a bad random draw can fail
//! loudly but never silently corrupt an index value.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::rational::rat;
use crate::algebra::{Polynomial, Rational, RationalFunction, TruncatedSeries};
use crate::error::{Error, Result};
use crate::{DEFAULT_MAX_ATTEMPTS, MAX_TRUNCATION};

/// Deterministic per-task PRNG streams derived from one job seed.
#[derive(Debug, Clone, Copy)]
pub struct Seeds {
    base: u64,
}

impl Seeds {
    pub fn new(base: u64) -> Seeds {
        Seeds { base }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// An independent stream for task `task`; identical seeds and task ids
    /// reproduce identical draws.
    pub fn stream(&self, task: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.base);
        rng.set_stream(task);
        rng
    }
}

/// Small-height random integer in [−17, 17], as a rational.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-17..=17))
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = rng.gen_range(-17..=17);
        if v != 0 {
            return rat(v);
        }
    }
}

/// Exactly verified witness that a point is a smooth rank-2 point of its cut
/// pair and avoids the listed polynomials.
#[derive(Debug, Clone)]
pub struct GenericPointCertificate {
    point: Vec<Rational>,
    cut: (Polynomial, Polynomial),
    /// Column indices of a nonzero 2×2 Jacobian minor of the cut pair.
    minor_cols: (usize, usize),
    minor_value: Rational,
    /// Polynomials verified nonzero at the point, with their values.
    avoided: Vec<(Polynomial, Rational)>,
}

impl GenericPointCertificate {
    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn cut(&self) -> (&Polynomial, &Polynomial) {
        (&self.cut.0, &self.cut.1)
    }

    pub fn minor_cols(&self) -> (usize, usize) {
        self.minor_cols
    }

    pub fn minor_value(&self) -> &Rational {
        &self.minor_value
    }

    pub fn avoided(&self) -> &[(Polynomial, Rational)] {
        &self.avoided
    }

    /// Re-checks every certified fact by exact evaluation.
    pub fn reverify(&self) -> Result<()> {
        if !self.cut.0.evaluate(&self.point).is_zero()
            || !self.cut.1.evaluate(&self.point).is_zero()
        {
            return Err(Error::NoGenericPointFound("point left the component".into()));
        }
        let (a, b) = self.minor_cols;
        let g0 = self.cut.0.gradient_at(&self.point);
        let g1 = self.cut.1.gradient_at(&self.point);
        let det = &g0[a] * &g1[b] - &g0[b] * &g1[a];
        if det != self.minor_value || det.is_zero() {
            return Err(Error::NoGenericPointFound("Jacobian minor changed".into()));
        }
        for (p, v) in &self.avoided {
            let now = p.evaluate(&self.point);
            if now.is_zero() || &now != v {
                return Err(Error::NoGenericPointFound("avoidance value changed".into()));
            }
        }
        Ok(())
    }

    /// The Jacobian of the cut pair applied to two directions, as a 2×2
    /// matrix [[∇p₁·u, ∇p₁·v], [∇p₂·u, ∇p₂·v]].
    pub fn pair_jacobian_on(&self, u: &[Rational], v: &[Rational]) -> [[Rational; 2]; 2] {
        let g0 = self.cut.0.gradient_at(&self.point);
        let g1 = self.cut.1.gradient_at(&self.point);
        let dot = |g: &[Rational], d: &[Rational]| -> Rational {
            g.iter().zip(d).map(|(a, b)| a * b).fold(Rational::zero(), |acc, x| acc + x)
        };
        [[dot(&g0, u), dot(&g0, v)], [dot(&g1, u), dot(&g1, v)]]
    }
}

/// Builds a certificate for an explicit candidate point, verifying membership,
/// rank 2, and avoidance.
pub fn certify_point(
    cut: (&Polynomial, &Polynomial),
    avoid: &[Polynomial],
    point: &[Rational],
) -> Result<GenericPointCertificate> {
    if point.len() != cut.0.vars().len() {
        return Err(Error::NoGenericPointFound("point arity mismatch".into()));
    }
    if !cut.0.evaluate(point).is_zero() || !cut.1.evaluate(point).is_zero() {
        return Err(Error::NoGenericPointFound(
            "point does not lie on the cut pair".into(),
        ));
    }
    let g0 = cut.0.gradient_at(point);
    let g1 = cut.1.gradient_at(point);
    let n = point.len();
    let mut minor = None;
    'outer: for a in 0..n {
        for b in (a + 1)..n {
            let det = &g0[a] * &g1[b] - &g0[b] * &g1[a];
            if !det.is_zero() {
                minor = Some(((a, b), det));
                break 'outer;
            }
        }
    }
    let (minor_cols, minor_value) = minor.ok_or_else(|| {
        Error::NoGenericPointFound("Jacobian of the cut pair has rank < 2 at the point".into())
    })?;
    let mut avoided = Vec::with_capacity(avoid.len());
    for p in avoid {
        let v = p.evaluate(point);
        if v.is_zero() {
            return Err(Error::NoGenericPointFound(format!(
                "point lies on avoided locus {{{p} = 0}}"
            )));
        }
        avoided.push((p.clone(), v));
    }
    Ok(GenericPointCertificate {
        point: point.to_vec(),
        cut: (cut.0.clone(), cut.1.clone()),
        minor_cols,
        minor_value,
        avoided,
    })
}

/// Row-reduces the affine-linear system {p₁ = 0, p₂ = 0}.
///
/// Returns pivot columns or classifies the failure (rank deficiency versus
/// genuinely empty intersection).
struct LinearSystem {
    /// rows[r] = (coefficients, constant): Σ aᵢxᵢ + c = 0
    rows: Vec<(Vec<Rational>, Rational)>,
    pivots: Vec<usize>,
}

fn reduce_linear_pair(p1: &Polynomial, p2: &Polynomial) -> Result<LinearSystem> {
    let n = p1.vars().len();
    let mut rows: Vec<(Vec<Rational>, Rational)> = [p1, p2]
        .iter()
        .map(|p| {
            let coeffs: Vec<Rational> = (0..n).map(|i| p.linear_coefficient(i)).collect();
            (coeffs, p.constant_term())
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r >= rows.len() {
            break;
        }
        let pivot_row = (r..rows.len()).find(|&k| !rows[k].0[col].is_zero());
        let Some(k) = pivot_row else { continue };
        rows.swap(r, k);
        let inv = Rational::one() / rows[r].0[col].clone();
        for c in rows[r].0.iter_mut() {
            *c *= &inv;
        }
        rows[r].1 *= &inv;
        let (head, tail) = rows.split_at_mut(r + 1);
        for other in tail.iter_mut().chain(core::iter::empty()) {
            let factor = other.0[col].clone();
            if factor.is_zero() {
                continue;
            }
            for (a, b) in other.0.iter_mut().zip(&head[r].0) {
                *a -= &factor * b;
            }
            other.1 -= &factor * &head[r].1;
        }
        pivots.push(col);
        r += 1;
    }
    // Inconsistent row: 0 = nonzero constant.
    for (coeffs, c) in rows.iter().skip(pivots.len()).chain(rows.iter().take(0)) {
        if coeffs.iter().all(Rational::is_zero) && !c.is_zero() {
            return Err(Error::EmptyIntersection);
        }
    }
    if pivots.len() < 2 {
        // Check consistency of the dropped rows before reporting rank.
        for (coeffs, c) in &rows {
            if coeffs.iter().all(Rational::is_zero) && !c.is_zero() {
                return Err(Error::EmptyIntersection);
            }
        }
        return Err(Error::NoGenericPointFound(
            "cut pair does not define a codimension-two set (rank < 2)".into(),
        ));
    }
    Ok(LinearSystem { rows, pivots })
}

/// Finds (or certifies) a generic point of the component cut out by the pair.
///
/// Affine-linear pairs are solved directly with randomized free coordinates
/// (coordinate pairs are the special case where the pivots are coordinates);
/// nonlinear pairs are only certified and need a user-supplied `hint`.
pub fn find_generic_point(
    cut: (&Polynomial, &Polynomial),
    avoid: &[Polynomial],
    hint: Option<&[Rational]>,
    rng: &mut ChaCha8Rng,
    max_attempts: usize,
) -> Result<GenericPointCertificate> {
    if let Some(point) = hint {
        return certify_point(cut, avoid, point);
    }
    if !cut.0.is_affine_linear() || !cut.1.is_affine_linear() {
        return Err(Error::UserPointRequired);
    }
    if cut.0.is_constant() || cut.1.is_constant() {
        return Err(if cut.0.is_zero() && cut.1.is_zero() {
            Error::NoGenericPointFound("zero cut polynomials".into())
        } else {
            Error::EmptyIntersection
        });
    }
    let system = reduce_linear_pair(cut.0, cut.1)?;
    let n = cut.0.vars().len();
    let mut last_err = Error::NoGenericPointFound("no attempts made".to_string());
    for _ in 0..max_attempts.max(1) {
        // Back-substitution with random free coordinates.
        let mut point = vec![Rational::zero(); n];
        for i in 0..n {
            if !system.pivots.contains(&i) {
                point[i] = small_rational(rng);
            }
        }
        for (row, &col) in system.rows.iter().zip(&system.pivots).rev() {
            let mut value = -row.1.clone();
            for (i, c) in row.0.iter().enumerate() {
                if i != col && !c.is_zero() {
                    value -= c * &point[i];
                }
            }
            point[col] = value;
        }
        match certify_point(cut, avoid, &point) {
            Ok(cert) => return Ok(cert),
            Err(e) => last_err = e,
        }
    }
    Err(match last_err {
        Error::NoGenericPointFound(d) => {
            Error::NoGenericPointFound(format!("{d} (after {max_attempts} attempts)"))
        }
        other => other,
    })
}

/// A series curve c(t) inside {f = 0} through a certified point, leaving the
/// component at first order.
#[derive(Debug, Clone)]
pub struct TransverseCurve {
    base: GenericPointCertificate,
    hypersurface: Polynomial,
    direction: Vec<Rational>,
    newton_coord: usize,
    series: Vec<TruncatedSeries>,
}

impl TransverseCurve {
    pub fn base(&self) -> &GenericPointCertificate {
        &self.base
    }

    pub fn hypersurface(&self) -> &Polynomial {
        &self.hypersurface
    }

    pub fn direction(&self) -> &[Rational] {
        &self.direction
    }

    pub fn series(&self) -> &[TruncatedSeries] {
        &self.series
    }

    /// Coordinate along which the order-by-order corrections run.
    pub fn newton_coord(&self) -> usize {
        self.newton_coord
    }

    pub fn order(&self) -> usize {
        self.series[0].order()
    }

    /// The same curve relifted at a different truncation order.
    pub fn with_order(&self, order: usize) -> Result<TransverseCurve> {
        lift_transverse_curve(&self.hypersurface, &self.base, &self.direction, order)
    }
}

fn newton_lift(
    f: &Polynomial,
    point: &[Rational],
    direction: &[Rational],
    newton_coord: usize,
    order: usize,
) -> Result<Vec<TruncatedSeries>> {
    let n = point.len();
    let dfe = f.differentiate(newton_coord).evaluate(point);
    debug_assert!(!dfe.is_zero());
    let mut series: Vec<TruncatedSeries> = (0..n)
        .map(|i| {
            let mut s = TruncatedSeries::constant(order, point[i].clone());
            if order >= 1 {
                s.set_coeff(1, direction[i].clone());
            }
            s
        })
        .collect();
    for k in 2..=order {
        let value = f.evaluate_series(&series)?;
        let residual = value.coeff(k).clone();
        if residual.is_zero() {
            continue;
        }
        let correction = -residual / &dfe;
        let cur = series[newton_coord].coeff(k) + correction;
        series[newton_coord].set_coeff(k, cur);
    }
    let check = f.evaluate_series(&series)?;
    if !check.is_zero() {
        return Err(Error::NewtonBreakdown);
    }
    Ok(series)
}

/// Lifts c(t) = point + t·direction + Σ_{k≥2} aₖtᵏ·e with f(c(t)) ≡ 0 to the
/// truncation order, where e is the highest coordinate with ∂f/∂e ≠ 0 at the
/// point. The direction must be tangent: ∇f·direction = 0.
pub fn lift_curve_on_hypersurface(
    f: &Polynomial,
    point: &[Rational],
    direction: &[Rational],
    order: usize,
) -> Result<(Vec<TruncatedSeries>, usize)> {
    if !f.evaluate(point).is_zero() {
        return Err(Error::NotOnHypersurface);
    }
    let grad = f.gradient_at(point);
    let newton_coord = (0..grad.len())
        .rev()
        .find(|&i| !grad[i].is_zero())
        .ok_or(Error::NewtonBreakdown)?;
    let pairing: Rational = grad
        .iter()
        .zip(direction)
        .map(|(g, d)| g * d)
        .fold(Rational::zero(), |acc, x| acc + x);
    if !pairing.is_zero() {
        return Err(Error::DirectionNotTangent);
    }
    if direction.iter().all(Rational::is_zero) {
        return Err(Error::DirectionNotTangent);
    }
    let series = newton_lift(f, point, direction, newton_coord, order)?;
    Ok((series, newton_coord))
}

/// Certified variant of [`lift_curve_on_hypersurface`]: the curve must also
/// leave the component at first order, witnessed by a cut polynomial other
/// than f pulling back with t-order exactly one, while any cut polynomial
/// equal to f vanishes identically along the curve.
pub fn lift_transverse_curve(
    f: &Polynomial,
    cert: &GenericPointCertificate,
    direction: &[Rational],
    order: usize,
) -> Result<TransverseCurve> {
    let (series, newton_coord) =
        lift_curve_on_hypersurface(f, cert.point(), direction, order)?;
    let mut first_order_witness = false;
    for p in [cert.cut().0, cert.cut().1] {
        let along = p.evaluate_series(&series)?;
        if p == f {
            if !along.is_zero() {
                return Err(Error::NewtonBreakdown);
            }
            continue;
        }
        match along.first_nonzero() {
            Some(1) => first_order_witness = true,
            Some(0) => return Err(Error::NotOnHypersurface),
            _ => {}
        }
    }
    if !first_order_witness {
        return Err(Error::NotTransverse);
    }
    Ok(TransverseCurve {
        base: cert.clone(),
        hypersurface: f.clone(),
        direction: direction.to_vec(),
        newton_coord,
        series,
    })
}

/// Draws random tangent directions until a transverse curve certifies.
pub fn select_transverse_curve(
    f: &Polynomial,
    cert: &GenericPointCertificate,
    order: usize,
    rng: &mut ChaCha8Rng,
    max_attempts: usize,
) -> Result<TransverseCurve> {
    let point = cert.point();
    let grad = f.gradient_at(point);
    let pivot = (0..grad.len())
        .rev()
        .find(|&i| !grad[i].is_zero())
        .ok_or(Error::NewtonBreakdown)?;
    let mut last_err = Error::NotTransverse;
    for attempt in 0..max_attempts.max(1) {
        let mut dir = vec![Rational::zero(); grad.len()];
        for (i, d) in dir.iter_mut().enumerate() {
            if i != pivot {
                // Prefer sparse small directions on the first attempts.
                *d = if attempt == 0 { small_nonzero(rng) } else { small_rational(rng) };
            }
        }
        let mut acc = Rational::zero();
        for (i, d) in dir.iter().enumerate() {
            if i != pivot {
                acc += &grad[i] * d;
            }
        }
        dir[pivot] = -acc / &grad[pivot];
        if dir.iter().all(Rational::is_zero) {
            continue;
        }
        match lift_transverse_curve(f, cert, &dir, order) {
            Ok(curve) => return Ok(curve),
            Err(e @ (Error::NotTransverse | Error::DirectionNotTangent)) => last_err = e,
            Err(other) => return Err(other),
        }
    }
    Err(last_err)
}

/// t-order of q(c(t)) along the curve; for rational functions the order of
/// the numerator minus the order of the denominator. Escalates the curve's
/// truncation up to the hard ceiling before giving up.
pub fn vanishing_order(q: &RationalFunction, curve: &TransverseCurve) -> Result<i64> {
    let mut current = curve.clone();
    loop {
        let num = q.num().evaluate_series(current.series())?;
        let den = q.den().evaluate_series(current.series())?;
        match (num.first_nonzero(), den.first_nonzero()) {
            (Some(a), Some(b)) => return Ok(a as i64 - b as i64),
            _ => {
                let next = current.order() * 2;
                if next > MAX_TRUNCATION {
                    return Err(Error::OrderExceedsTruncation);
                }
                current = current.with_order(next)?;
            }
        }
    }
}

/// Convenience wrapper for polynomial arguments.
pub fn vanishing_order_poly(q: &Polynomial, curve: &TransverseCurve) -> Result<i64> {
    vanishing_order(&RationalFunction::from_poly(q.clone()), curve)
}

/// A randomized affine 2-plane through a certified point whose directions
/// invert the cut-pair Jacobian.
#[derive(Debug, Clone)]
pub struct TransversePlane {
    base: GenericPointCertificate,
    dir_s: Vec<Rational>,
    dir_t: Vec<Rational>,
    pair_jacobian: [[Rational; 2]; 2],
}

impl TransversePlane {
    pub fn base(&self) -> &GenericPointCertificate {
        &self.base
    }

    pub fn dir_s(&self) -> &[Rational] {
        &self.dir_s
    }

    pub fn dir_t(&self) -> &[Rational] {
        &self.dir_t
    }

    pub fn pair_jacobian(&self) -> &[[Rational; 2]; 2] {
        &self.pair_jacobian
    }

    pub fn to_affine(&self) -> crate::forms::AffinePlane {
        crate::forms::AffinePlane {
            base: self.base.point().to_vec(),
            dir_s: self.dir_s.clone(),
            dir_t: self.dir_t.clone(),
        }
    }

    /// Re-checks invertibility of the stored Jacobian pairing.
    pub fn reverify(&self) -> Result<()> {
        let m = self.base.pair_jacobian_on(&self.dir_s, &self.dir_t);
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if m != self.pair_jacobian || det.is_zero() {
            return Err(Error::NoTransversePlaneFound);
        }
        Ok(())
    }
}

fn try_plane(
    cert: &GenericPointCertificate,
    dir_s: Vec<Rational>,
    dir_t: Vec<Rational>,
) -> Option<TransversePlane> {
    let m = cert.pair_jacobian_on(&dir_s, &dir_t);
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if det.is_zero() {
        return None;
    }
    Some(TransversePlane { base: cert.clone(), dir_s, dir_t, pair_jacobian: m })
}

/// Builds a transverse plane at the certified point. The first attempt uses
/// the coordinate directions of the certified Jacobian minor (which recovers
/// the obvious coordinate plane for coordinate components); later attempts
/// are randomized.
pub fn build_transverse_plane(
    cert: &GenericPointCertificate,
    rng: &mut ChaCha8Rng,
    max_attempts: usize,
) -> Result<TransversePlane> {
    let n = cert.point().len();
    let unit = |i: usize| -> Vec<Rational> {
        (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
    };
    let (a, b) = cert.minor_cols();
    if let Some(plane) = try_plane(cert, unit(a), unit(b)) {
        return Ok(plane);
    }
    for _ in 0..max_attempts.max(1) {
        let dir_s: Vec<Rational> = (0..n).map(|_| small_rational(rng)).collect();
        let dir_t: Vec<Rational> = (0..n).map(|_| small_rational(rng)).collect();
        if let Some(plane) = try_plane(cert, dir_s, dir_t) {
            return Ok(plane);
        }
    }
    Err(Error::NoTransversePlaneFound)
}

/// A series parametrization of the component itself: both cut polynomials
/// vanish along it to truncation depth. Corrections run along the two minor
/// columns, solved order by order with the certified invertible 2×2 block.
pub fn curve_in_component(
    cert: &GenericPointCertificate,
    order: usize,
) -> Result<Vec<TruncatedSeries>> {
    let (p1, p2) = cert.cut();
    let point = cert.point();
    let n = point.len();
    let (a, b) = cert.minor_cols();
    let g1 = p1.gradient_at(point);
    let g2 = p2.gradient_at(point);
    // Tangent direction: free coordinates fixed, minor block solved.
    let free = (0..n).find(|&i| i != a && i != b).ok_or(Error::NewtonBreakdown)?;
    let mut dir = vec![Rational::zero(); n];
    dir[free] = Rational::one();
    // Solve [g1a g1b; g2a g2b]·(da, db) = −(g1_free, g2_free).
    let det = &g1[a] * &g2[b] - &g1[b] * &g2[a];
    debug_assert!(!det.is_zero());
    let r1 = -g1[free].clone();
    let r2 = -g2[free].clone();
    dir[a] = (&r1 * &g2[b] - &g1[b] * &r2) / &det;
    dir[b] = (&g1[a] * &r2 - &r1 * &g2[a]) / &det;

    let mut series: Vec<TruncatedSeries> = (0..n)
        .map(|i| {
            let mut s = TruncatedSeries::constant(order, point[i].clone());
            if order >= 1 {
                s.set_coeff(1, dir[i].clone());
            }
            s
        })
        .collect();
    for k in 2..=order {
        let v1 = p1.evaluate_series(&series)?.coeff(k).clone();
        let v2 = p2.evaluate_series(&series)?.coeff(k).clone();
        if v1.is_zero() && v2.is_zero() {
            continue;
        }
        let ca = (&(-v1.clone()) * &g2[b] - &g1[b] * &(-v2.clone())) / &det;
        let cb = (&g1[a] * &(-v2) - &(-v1) * &g2[a]) / &det;
        let cur_a = series[a].coeff(k) + ca;
        series[a].set_coeff(k, cur_a);
        let cur_b = series[b].coeff(k) + cb;
        series[b].set_coeff(k, cur_b);
    }
    if !p1.evaluate_series(&series)?.is_zero() || !p2.evaluate_series(&series)?.is_zero() {
        return Err(Error::NewtonBreakdown);
    }
    Ok(series)
}

// ---------------------------------------------------------------------------
// Non-vanishing witnesses on a hypersurface
// ---------------------------------------------------------------------------

fn trim(mut coeffs: Vec<Rational>) -> Vec<Rational> {
    while coeffs.len() > 1 && coeffs.last().map(Rational::is_zero).unwrap_or(false) {
        coeffs.pop();
    }
    coeffs
}

fn univ_degree(coeffs: &[Rational]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

fn univ_rem(mut a: Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    let db = univ_degree(b).expect("nonzero divisor");
    let lead = b[db].clone();
    while let Some(da) = univ_degree(&a) {
        if da < db {
            break;
        }
        let factor = a[da].clone() / &lead;
        for k in 0..=db {
            let adj = &factor * &b[k];
            a[da - db + k] -= adj;
        }
        a[da] = Rational::zero();
    }
    trim(a)
}

fn univ_gcd_degree(a: Vec<Rational>, b: Vec<Rational>) -> usize {
    let mut a = trim(a);
    let mut b = trim(b);
    loop {
        match (univ_degree(&a), univ_degree(&b)) {
            (_, None) => return univ_degree(&a).unwrap_or(0),
            (None, Some(db)) => return db,
            (Some(_), Some(_)) => {
                let r = univ_rem(a, &b);
                a = b;
                b = r;
            }
        }
    }
}

/// Evaluates p along the affine line base + t·dir as exact univariate
/// coefficients.
fn along_line(p: &Polynomial, base: &[Rational], dir: &[Rational]) -> Result<Vec<Rational>> {
    let order = p.total_degree().unwrap_or(0) as usize;
    let point: Vec<TruncatedSeries> = base
        .iter()
        .zip(dir)
        .map(|(b, d)| {
            let mut s = TruncatedSeries::constant(order.max(1), b.clone());
            s.set_coeff(1, d.clone());
            s
        })
        .collect();
    Ok(trim(p.evaluate_series(&point)?.coeffs().to_vec()))
}

/// Certifies that `q` does not vanish identically on the hypersurface
/// {f = 0}, by accumulating at least `needed` points of the hypersurface at
/// which q is nonzero.
///
/// Random lines L meet {f = 0} in deg f points (over the complex numbers); a
/// trivial gcd of f∘L and q∘L witnesses that q is nonzero at all of them.
/// For affine-linear f the single intersection point is rational, so this is
/// literally evaluation at random points of the hypersurface.
pub fn nonvanishing_on_hypersurface(
    f: &Polynomial,
    q: &Polynomial,
    rng: &mut ChaCha8Rng,
    needed: usize,
) -> Result<()> {
    if q.is_constant() {
        return if q.is_zero() {
            Err(Error::SaitoCoprimalityFailed(format!("{q}")))
        } else {
            Ok(())
        };
    }
    let n = f.vars().len();
    let mut points = 0usize;
    let attempts = (needed * DEFAULT_MAX_ATTEMPTS).max(24);
    for _ in 0..attempts {
        let base: Vec<Rational> = (0..n).map(|_| small_rational(rng)).collect();
        let dir: Vec<Rational> = (0..n).map(|_| small_rational(rng)).collect();
        if dir.iter().all(Rational::is_zero) {
            continue;
        }
        let ft = along_line(f, &base, &dir)?;
        let qt = along_line(q, &base, &dir)?;
        match (univ_degree(&ft), univ_degree(&qt)) {
            (None, Some(_)) => {
                // The whole line lies inside {f = 0} and q is nonzero on it.
                return Ok(());
            }
            (Some(0), _) | (None, None) | (_, None) => continue,
            (Some(df), Some(_)) => {
                if univ_gcd_degree(ft, qt) == 0 {
                    points += df;
                    if points >= needed {
                        return Ok(());
                    }
                }
            }
        }
    }
    Err(Error::SaitoCoprimalityFailed(format!("{q}")))
}

/// Label used in diagnostics for a cut pair.
pub fn cut_label(cut: (&Polynomial, &Polynomial)) -> String {
    format!("{{{} = 0, {} = 0}}", cut.0, cut.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;
    use crate::algebra::Vars;

    fn xyz() -> Vars {
        Vars::new(["x", "y", "z"]).unwrap()
    }

    fn coord(v: &Vars, i: usize) -> Polynomial {
        Polynomial::variable(v, i)
    }

    #[test]
    fn coordinate_pair_point() {
        let v = xyz();
        let (y, z) = (coord(&v, 1), coord(&v, 2));
        let avoid = [coord(&v, 0)];
        let mut rng = Seeds::new(7).stream(0);
        let cert = find_generic_point((&y, &z), &avoid, None, &mut rng, 8).unwrap();
        assert!(cert.point()[1].is_zero() && cert.point()[2].is_zero());
        assert!(!cert.point()[0].is_zero());
        cert.reverify().unwrap();
    }

    #[test]
    fn determinism_of_point_search() {
        let v = xyz();
        let (y, z) = (coord(&v, 1), coord(&v, 2));
        let avoid = [coord(&v, 0)];
        let a = find_generic_point((&y, &z), &avoid, None, &mut Seeds::new(3).stream(5), 8)
            .unwrap();
        let b = find_generic_point((&y, &z), &avoid, None, &mut Seeds::new(3).stream(5), 8)
            .unwrap();
        assert_eq!(a.point(), b.point());
    }

    #[test]
    fn degenerate_pair_is_rejected() {
        let v = xyz();
        let x = coord(&v, 0);
        let mut rng = Seeds::new(0).stream(0);
        let err = find_generic_point((&x, &x), &[], None, &mut rng, 4).unwrap_err();
        assert!(matches!(err, Error::NoGenericPointFound(_)));
    }

    #[test]
    fn parallel_planes_are_empty() {
        let v = xyz();
        let x = coord(&v, 0);
        let x1 = &x - &Polynomial::one(&v);
        let mut rng = Seeds::new(0).stream(0);
        let err = find_generic_point((&x, &x1), &[], None, &mut rng, 4).unwrap_err();
        assert_eq!(err, Error::EmptyIntersection);
    }

    #[test]
    fn general_linear_pair() {
        let v = xyz();
        let f = &coord(&v, 0) + &coord(&v, 1); // x + y
        let z = coord(&v, 2);
        let avoid = [coord(&v, 0)];
        let mut rng = Seeds::new(11).stream(0);
        let cert = find_generic_point((&f, &z), &avoid, None, &mut rng, 8).unwrap();
        assert!(f.evaluate(cert.point()).is_zero());
        cert.reverify().unwrap();
    }

    #[test]
    fn nonlinear_pair_needs_hint() {
        let v = xyz();
        let x = coord(&v, 0);
        let q = &(&x * &x) - &coord(&v, 1); // x² − y
        let z = coord(&v, 2);
        let mut rng = Seeds::new(0).stream(0);
        assert_eq!(
            find_generic_point((&q, &z), &[], None, &mut rng, 4).unwrap_err(),
            Error::UserPointRequired
        );
        let hint = [rat(2), rat(4), rat(0)];
        let cert = find_generic_point((&q, &z), &[], Some(&hint), &mut rng, 4).unwrap();
        cert.reverify().unwrap();
    }

    #[test]
    fn flat_curve_lift() {
        let v = xyz();
        let (y, z) = (coord(&v, 1), coord(&v, 2));
        let cert = certify_point((&y, &z), &[coord(&v, 0)], &[rat(1), rat(0), rat(0)]).unwrap();
        let dir = [rat(0), rat(1), rat(0)];
        let curve = lift_transverse_curve(&z, &cert, &dir, 8).unwrap();
        // c(t) = (1, t, 0)
        assert_eq!(curve.series()[0], TruncatedSeries::constant(8, rat(1)));
        assert_eq!(curve.series()[1], TruncatedSeries::variable(8));
        assert!(curve.series()[2].is_zero());
    }

    #[test]
    fn paper_section_curve() {
        // f = y at (1,0,0) with direction (0,0,1) gives (1, 0, t).
        let v = xyz();
        let (y, z) = (coord(&v, 1), coord(&v, 2));
        let cert = certify_point((&y, &z), &[coord(&v, 0)], &[rat(1), rat(0), rat(0)]).unwrap();
        let curve = lift_transverse_curve(&y, &cert, &[rat(0), rat(0), rat(1)], 8).unwrap();
        assert!(curve.series()[1].is_zero());
        assert_eq!(curve.series()[2], TruncatedSeries::variable(8));
    }

    #[test]
    fn graph_curve_lift() {
        // f = z − x² from (1,0,1) along (1,0,2) lifts to (1+t, 0, 1+2t+t²).
        let v = xyz();
        let x = coord(&v, 0);
        let f = &coord(&v, 2) - &(&x * &x);
        let point = [rat(1), rat(0), rat(1)];
        let (series, newton_coord) =
            lift_curve_on_hypersurface(&f, &point, &[rat(1), rat(0), rat(2)], 8).unwrap();
        assert_eq!(newton_coord, 2);
        let mut expected_x = TruncatedSeries::constant(8, rat(1));
        expected_x.set_coeff(1, rat(1));
        let mut expected_z = TruncatedSeries::constant(8, rat(1));
        expected_z.set_coeff(1, rat(2));
        expected_z.set_coeff(2, rat(1));
        assert_eq!(series[0], expected_x);
        assert!(series[1].is_zero());
        assert_eq!(series[2], expected_z);
    }

    #[test]
    fn tangent_direction_is_flagged() {
        let v = xyz();
        let (y, z) = (coord(&v, 1), coord(&v, 2));
        let cert = certify_point((&y, &z), &[], &[rat(1), rat(0), rat(0)]).unwrap();
        // Direction along Z itself never witnesses first order.
        let err = lift_transverse_curve(&z, &cert, &[rat(1), rat(0), rat(0)], 8).unwrap_err();
        assert_eq!(err, Error::NotTransverse);
        // Non-tangent direction is rejected outright.
        let err = lift_transverse_curve(&z, &cert, &[rat(0), rat(0), rat(1)], 8).unwrap_err();
        assert_eq!(err, Error::DirectionNotTangent);
    }

    #[test]
    fn vanishing_orders_along_flat_curve() {
        let v = xyz();
        let (x, y, z) = (coord(&v, 0), coord(&v, 1), coord(&v, 2));
        let cert = certify_point((&y, &z), &[x.clone()], &[rat(1), rat(0), rat(0)]).unwrap();
        let curve = lift_transverse_curve(&z, &cert, &[rat(0), rat(1), rat(0)], 8).unwrap();
        let q = (&x * &y).scale(&rat(4));
        assert_eq!(vanishing_order_poly(&q, &curve).unwrap(), 1);
        assert_eq!(vanishing_order_poly(&x, &curve).unwrap(), 0);

        let curve_z =
            lift_transverse_curve(&y, &cert, &[rat(0), rat(0), rat(1)], 8).unwrap();
        let z3 = &(&z * &z) * &z;
        assert_eq!(vanishing_order_poly(&z3, &curve_z).unwrap(), 3);
        // identically zero along the curve: escalation runs out
        assert_eq!(
            vanishing_order_poly(&y, &curve_z).unwrap_err(),
            Error::OrderExceedsTruncation
        );
    }

    #[test]
    fn order_is_additive() {
        let v = xyz();
        let (x, y, z) = (coord(&v, 0), coord(&v, 1), coord(&v, 2));
        let cert = certify_point((&y, &z), &[x.clone()], &[rat(2), rat(0), rat(0)]).unwrap();
        let curve = lift_transverse_curve(&z, &cert, &[rat(1), rat(3), rat(0)], 12).unwrap();
        let q1 = &y * &(&x - &Polynomial::one(&v));
        let q2 = &y * &y;
        let o1 = vanishing_order_poly(&q1, &curve).unwrap();
        let o2 = vanishing_order_poly(&q2, &curve).unwrap();
        let o12 = vanishing_order_poly(&(&q1 * &q2), &curve).unwrap();
        assert_eq!(o12, o1 + o2);
    }

    #[test]
    fn canonical_plane_for_coordinate_component() {
        let v = xyz();
        let (y, z) = (coord(&v, 1), coord(&v, 2));
        let cert = certify_point((&y, &z), &[coord(&v, 0)], &[rat(1), rat(0), rat(0)]).unwrap();
        let mut rng = Seeds::new(7).stream(1);
        let plane = build_transverse_plane(&cert, &mut rng, 8).unwrap();
        assert_eq!(plane.dir_s(), &[rat(0), rat(1), rat(0)]);
        assert_eq!(plane.dir_t(), &[rat(0), rat(0), rat(1)]);
        plane.reverify().unwrap();

        // Degenerate directions are not accepted.
        assert!(try_plane(&cert, alloc::vec![rat(1), rat(0), rat(0)], alloc::vec![rat(0), rat(1), rat(0)]).is_none());
    }

    #[test]
    fn component_curve_stays_inside() {
        let v = xyz();
        let x = coord(&v, 0);
        let q = &(&x * &x) - &coord(&v, 1);
        let z = coord(&v, 2);
        let cert =
            certify_point((&q, &z), &[], &[ratio(3, 2), ratio(9, 4), rat(0)]).unwrap();
        let series = curve_in_component(&cert, 10).unwrap();
        assert!(q.evaluate_series(&series).unwrap().is_zero());
        assert!(z.evaluate_series(&series).unwrap().is_zero());
        // and the parametrization moves
        assert!(series.iter().any(|s| !s.coeff(1).is_zero()));
    }

    #[test]
    fn hypersurface_witnesses() {
        let v = xyz();
        let (x, y) = (coord(&v, 0), coord(&v, 1));
        let mut rng = Seeds::new(5).stream(9);
        // 4xy does not vanish identically on {z = 0}
        let h = (&x * &y).scale(&rat(4));
        nonvanishing_on_hypersurface(&coord(&v, 2), &h, &mut rng, 3).unwrap();
        // x·z vanishes identically on {x = 0}
        let bad = &x * &coord(&v, 2);
        assert!(matches!(
            nonvanishing_on_hypersurface(&x, &bad, &mut rng, 3),
            Err(Error::SaitoCoprimalityFailed(_))
        ));
        // quadric hypersurface
        let quadric = &(&(&x * &x) + &(&y * &y)) - &coord(&v, 2);
        nonvanishing_on_hypersurface(&quadric, &x, &mut rng, 3).unwrap();
        let multiple = &quadric * &y;
        assert!(matches!(
            nonvanishing_on_hypersurface(&quadric, &multiple, &mut rng, 3),
            Err(Error::SaitoCoprimalityFailed(_))
        ));
    }
}
