//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra, geometry and index engines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two polynomials (or forms) over different variable lists were combined.
    VariableMismatch,
    /// Division by the zero polynomial.
    DivisionByZeroPolynomial,
    /// A variable name is not part of the active variable list.
    UnknownVariable(String),
    /// Series with different truncation orders were combined.
    TruncationMismatch,
    /// Every stored coefficient vanishes, so the order is not visible at the
    /// current truncation; callers escalate the truncation order.
    OrderExceedsTruncation,
    /// A denominator pullback vanishes to full truncation depth.
    PoleOrderOverflow,
    /// The two plane directions are linearly dependent.
    DegeneratePlane,
    /// The 1-form fails the Frobenius integrability condition.
    NotIntegrable,
    /// Internal consistency failure of a cofactor decomposition.
    CofactorIdentityFailed,
    /// The decomposition identity g·ω = h·df + f·η does not hold.
    SaitoIdentityFailed,
    /// h or g vanishes at every sampled point of the hypersurface.
    SaitoCoprimalityFailed(String),
    /// No certified generic point was found within the attempt budget.
    NoGenericPointFound(String),
    /// The defining 1-form does not vanish at the certified point.
    ComponentNotSingular,
    /// A nonlinear cut pair needs a user-supplied point to certify.
    UserPointRequired,
    /// Order-by-order solving failed; indicates violated preconditions.
    NewtonBreakdown,
    /// The base point does not lie on the hypersurface.
    NotOnHypersurface,
    /// The supplied direction is not tangent to the hypersurface.
    DirectionNotTangent,
    /// The lifted curve does not leave the component at first order.
    NotTransverse,
    /// No transverse plane with invertible cut-pair Jacobian was found.
    NoTransversePlaneFound,
    /// Every sampled plane yields a singular linear part.
    DegenerateLinearPart,
    /// Indices of different components were combined.
    MismatchedComponent,
    /// A declared-homogeneous polynomial is not homogeneous of its degree.
    NotHomogeneous(String),
    /// The weighted degree sum Σ λⱼ·deg fⱼ does not vanish.
    EulerConditionFailed,
    /// A singular component is invisible in the selected affine chart.
    ChartMissesComponent(String),
    /// The cut pair has no common zero (empty intersection).
    EmptyIntersection,
    /// Independently certified points produced different index values.
    MethodDisagreement(String),
    /// Auto enumeration is only available for factored presentations.
    DeclaredComponentsRequired,
    /// Malformed input to a constructor (lengths, duplicates, zeroes, ...).
    InvalidPresentation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VariableMismatch => write!(f, "operands use different variable lists"),
            Error::DivisionByZeroPolynomial => write!(f, "division by the zero polynomial"),
            Error::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            Error::TruncationMismatch => write!(f, "series truncation orders differ"),
            Error::OrderExceedsTruncation => {
                write!(f, "all stored coefficients vanish; order exceeds truncation")
            }
            Error::PoleOrderOverflow => {
                write!(f, "denominator vanishes to full truncation depth")
            }
            Error::DegeneratePlane => write!(f, "plane directions are linearly dependent"),
            Error::NotIntegrable => write!(f, "NotIntegrable: the 1-form has nonzero integrability defect"),
            Error::CofactorIdentityFailed => {
                write!(f, "internal error: cofactor identity dω = γ₀∧ω failed")
            }
            Error::SaitoIdentityFailed => {
                write!(f, "decomposition identity g·ω = h·df + f·η does not hold")
            }
            Error::SaitoCoprimalityFailed(which) => {
                write!(f, "{which} vanishes at every sampled point of the hypersurface")
            }
            Error::NoGenericPointFound(detail) => write!(f, "no generic point found: {detail}"),
            Error::ComponentNotSingular => {
                write!(f, "the 1-form does not vanish at the certified point")
            }
            Error::UserPointRequired => {
                write!(f, "nonlinear cut pair: supply a generic point to certify")
            }
            Error::NewtonBreakdown => write!(f, "internal error: order-by-order solving failed"),
            Error::NotOnHypersurface => write!(f, "base point is not on the hypersurface"),
            Error::DirectionNotTangent => write!(f, "direction is not tangent to the hypersurface"),
            Error::NotTransverse => write!(f, "curve does not leave the component at first order"),
            Error::NoTransversePlaneFound => {
                write!(f, "no transverse plane found within the attempt budget")
            }
            Error::DegenerateLinearPart => {
                write!(f, "every sampled transverse plane has singular linear part")
            }
            Error::MismatchedComponent => write!(f, "index values belong to different components"),
            Error::NotHomogeneous(p) => write!(f, "`{p}` is not homogeneous of its declared degree"),
            Error::EulerConditionFailed => {
                write!(f, "weighted degree sum Σ λⱼ·deg fⱼ is nonzero")
            }
            Error::ChartMissesComponent(z) => {
                write!(f, "component {z} is not visible in the selected chart")
            }
            Error::EmptyIntersection => write!(f, "cut pair has no common zero"),
            Error::MethodDisagreement(d) => write!(f, "independent methods disagree: {d}"),
            Error::DeclaredComponentsRequired => {
                write!(f, "auto enumeration needs a factored presentation; declare components")
            }
            Error::InvalidPresentation(d) => write!(f, "invalid presentation: {d}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
