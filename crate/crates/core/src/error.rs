use core::fmt;

/// Errors raised by the geometric operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The curve's derivative (or the raw series being normalised) vanishes.
    NonRegularCurve {
        t: f64,
        speed: f64,
    },
    /// Duality relations between the two spherical curves are violated.
    DualityViolation {
        residual: &'static str,
        value: f64,
    },
    /// Gram matrix of the coordinate functions is (numerically) singular.
    DegenerateGram {
        condition: f64,
    },
    /// Space curve has zero curvature where a Frenet frame is required.
    VanishingCurvature {
        t: f64,
    },
    /// `μ2` or the geodesic curvature vanishes where a caustic is required.
    UmbilicDegenerate {
        t: f64,
    },
    NotOnSingularLocus {
        t: f64,
        residual: f64,
    },
    EmptySingularLocus,
    /// `μ1` vanishes, so the Γ-set scan is undefined.
    LinearSingularityPresent {
        t: f64,
    },
    /// The closing condition on the generator fails.
    PeriodConditionViolated {
        defect: f64,
    },
    /// Polyline segments are too long for the arc-pair intersection test.
    GridTooCoarse {
        max_segment: f64,
    },
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonRegularCurve { .. } => "NonRegularCurve",
            Error::DualityViolation { .. } => "DualityViolation",
            Error::DegenerateGram { .. } => "DegenerateGram",
            Error::VanishingCurvature { .. } => "VanishingCurvature",
            Error::UmbilicDegenerate { .. } => "UmbilicDegenerate",
            Error::NotOnSingularLocus { .. } => "NotOnSingularLocus",
            Error::EmptySingularLocus => "EmptySingularLocus",
            Error::LinearSingularityPresent { .. } => "LinearSingularityPresent",
            Error::PeriodConditionViolated { .. } => "PeriodConditionViolated",
            Error::GridTooCoarse { .. } => "GridTooCoarse",
            Error::InvalidParameter { .. } => "InvalidParameter",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonRegularCurve { t, speed } => {
                write!(f, "curve is not regular at t = {t} (speed {speed:e})")
            }
            Error::DualityViolation { residual, value } => {
                write!(f, "duality relation {residual} violated: residual {value:e}")
            }
            Error::DegenerateGram { condition } => {
                write!(f, "Gram matrix is degenerate (condition number {condition:e})")
            }
            Error::VanishingCurvature { t } => write!(f, "curvature vanishes at t = {t}"),
            Error::UmbilicDegenerate { t } => {
                write!(f, "umbilic degeneracy (vanishing curvature coefficient) at t = {t}")
            }
            Error::NotOnSingularLocus { t, residual } => {
                write!(f, "t = {t} is not on the singular locus (residual {residual:e})")
            }
            Error::EmptySingularLocus => write!(f, "singular locus is empty"),
            Error::LinearSingularityPresent { t } => {
                write!(f, "linear singular point (mu1 = 0) at t = {t}")
            }
            Error::PeriodConditionViolated { defect } => {
                write!(f, "period condition violated: defect norm {defect:e}")
            }
            Error::GridTooCoarse { max_segment } => {
                write!(f, "polyline segment of {max_segment} rad exceeds 0.1 rad")
            }
            Error::InvalidParameter { name, reason } => write!(f, "invalid parameter {name}: {reason}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
