//! Named example quadruples.

use alloc::vec::Vec;

use crate::curves::{dual_curve, SpaceCurve, SphericalCurve, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::frontal::Quadruple;
use crate::math::{cos, sin, sqrt, FRAC_PI_2};
use crate::series::{Trig, TrigCurve3, TrigSeries};
use crate::vec3::Vec3;

#[derive(Debug, Clone, PartialEq)]
pub enum GallerySpec {
    /// `(0, 0, ξ_φ, dual)`
    Cone {
        phi: f64,
    },
    /// `(cos nt dt, 0, ξ_φ, dual)`
    CircleCosN {
        phi: f64,
        n: usize,
    },
    /// Cylinder over the cardioid `(1 − sin t)(cos t, sin t)` on its double
    /// cover `t = 2s`.
    CardioidCylinder,
    /// Tangential developable of `((4 + cos 2t) cos t, (4 + cos 2t) sin t, sin 2t)`.
    TangentialExample54,
    TangentialCustom(SpaceCurve),
    RectifyingCustom(SpaceCurve),
    /// `(0, dt, (1, 0, 0), (0, 0, 1))`
    Plane,
}

pub const GALLERY_NAMES: [&str; 7] = [
    "cone",
    "circle_cos_n",
    "cardioid_cylinder",
    "tangential_example54",
    "tangential_custom",
    "rectifying_custom",
    "plane",
];

impl GallerySpec {
    pub fn name(&self) -> &'static str {
        match self {
            GallerySpec::Cone { .. } => "cone",
            GallerySpec::CircleCosN { .. } => "circle_cos_n",
            GallerySpec::CardioidCylinder => "cardioid_cylinder",
            GallerySpec::TangentialExample54 => "tangential_example54",
            GallerySpec::TangentialCustom(_) => "tangential_custom",
            GallerySpec::RectifyingCustom(_) => "rectifying_custom",
            GallerySpec::Plane => "plane",
        }
    }

    /// All parameter-free or default-parameter entries.
    pub fn defaults() -> Vec<GallerySpec> {
        let quarter = core::f64::consts::FRAC_PI_4;
        alloc::vec![
            GallerySpec::Cone { phi: quarter },
            GallerySpec::CircleCosN { phi: quarter, n: 2 },
            GallerySpec::CardioidCylinder,
            GallerySpec::TangentialExample54,
            GallerySpec::Plane,
        ]
    }
}

fn check_phi(phi: f64) -> Result<()> {
    if phi.is_finite() && phi.abs() < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "phi", reason: "must lie in (-pi/2, pi/2)" })
    }
}

fn latitude_pair(phi: f64, n: usize) -> Result<(SphericalCurve, SphericalCurve)> {
    check_phi(phi)?;
    let xi = SphericalCurve::latitude(phi).with_grid(n);
    let nu = dual_curve(&xi)?.curve.with_grid(n);
    Ok((xi, nu))
}

/// Builds the named example with `grid` samples per period.
pub fn gallery_build(spec: &GallerySpec, grid: usize) -> Result<Quadruple> {
    if grid < 16 {
        return Err(Error::InvalidParameter { name: "grid", reason: "must be at least 16" });
    }
    match spec {
        GallerySpec::Cone { phi } => {
            let (xi, nu) = latitude_pair(*phi, grid)?;
            Ok(Quadruple::new(TrigSeries::zero(), TrigSeries::zero(), xi, nu))
        }
        GallerySpec::CircleCosN { phi, n } => {
            if *n < 2 {
                return Err(Error::InvalidParameter { name: "n", reason: "must be at least 2" });
            }
            let (xi, nu) = latitude_pair(*phi, grid)?;
            Ok(Quadruple::new(Trig::harmonic(*n, 1.0, 0.0), TrigSeries::zero(), xi, nu))
        }
        GallerySpec::CardioidCylinder => cardioid_cylinder(grid),
        GallerySpec::TangentialExample54 => tangential_developable(&SpaceCurve::twisted_torus_knot(), grid),
        GallerySpec::TangentialCustom(c) => tangential_developable(c, grid),
        GallerySpec::RectifyingCustom(c) => rectifying_developable(c, grid),
        GallerySpec::Plane => Ok(Quadruple::new(
            TrigSeries::zero(),
            TrigSeries::constant(1.0),
            SphericalCurve::constant(Vec3::E1)?.with_grid(grid),
            SphericalCurve::constant(Vec3::E3)?.with_grid(grid),
        )),
    }
}

/// The cardioid `c(t) = (1 − sin t)(cos t, sin t, 0)` at `t = 2s`.
fn cardioid(s: f64) -> Vec3 {
    let t = 2.0 * s;
    Vec3::new(cos(t), sin(t), 0.0) * (1.0 - sin(t))
}

/// Unit normal of the cardioid at `t = 2s`; the raw field has constant
/// length `√2`.
fn cardioid_normal(s: f64) -> Vec3 {
    let (cs, ss, s2) = (cos(s), sin(s), sin(2.0 * s));
    Vec3::new((cs + ss) * (1.0 - 2.0 * s2), (cs - ss) * (1.0 + 2.0 * s2), 0.0) * (1.0 / sqrt(2.0))
}

fn cardioid_cylinder(grid: usize) -> Result<Quadruple> {
    // trigonometric degrees: c(2s) has degree 6, its normal degree 3,
    // b = σ̂′·η̂ degree 9; fit on enough points to be exact
    let n = grid.max(64);
    let sigma = TrigCurve3::fit(n, cardioid);
    let sigma_prime = sigma.derivative(1);
    let nu = SphericalCurve::new(TrigCurve3::fit(n, cardioid_normal))?.with_grid(grid);
    let xi = SphericalCurve::constant(Vec3::E3)?.with_grid(grid);
    let beta = TrigSeries::fit(n, |s| sigma_prime.eval(s).dot(Vec3::E3.cross(cardioid_normal(s))));
    Ok(Quadruple::new(TrigSeries::zero(), beta.trimmed(1e-14), xi, nu))
}

/// `ξ̂ = c′/‖c′‖`, `ν̂` the binormal, `a = ‖c′‖`, `b = 0`; the generator is
/// `c` itself.
pub fn tangential_developable(c: &SpaceCurve, grid: usize) -> Result<Quadruple> {
    c.check_curved(grid)?;
    let xi = SphericalCurve::fit(grid, |t| c.frenet_data(t).map(|f| f.e).unwrap_or(Vec3::ZERO))?.with_grid(grid);
    let nu = SphericalCurve::fit(grid, |t| c.frenet_data(t).map(|f| f.b).unwrap_or(Vec3::ZERO))?.with_grid(grid);
    let alpha = TrigSeries::fit(grid, |t| c.jet(t, 1)[1].norm());
    Ok(Quadruple::new(alpha, TrigSeries::zero(), xi, nu))
}

/// Rectifying developable: `ξ̂` along the Darboux direction `(τe + κb)/√(κ² + τ²)`,
/// `ν̂ = n`, `a = ‖c′‖τ/√(κ² + τ²)`, `b = −‖c′‖κ/√(κ² + τ²)`; the generator is `c`.
pub fn rectifying_developable(c: &SpaceCurve, grid: usize) -> Result<Quadruple> {
    c.check_curved(grid)?;
    let data = |t: f64| {
        let f = c.frenet_data(t).expect("curvature checked on the grid");
        let s = sqrt(f.kappa * f.kappa + f.tau * f.tau);
        (f, s, c.jet(t, 1)[1].norm())
    };
    let xi = SphericalCurve::fit(grid, |t| {
        let (f, s, _) = data(t);
        (f.e * f.tau + f.b * f.kappa) * (1.0 / s)
    })?
    .with_grid(grid);
    let nu = SphericalCurve::fit(grid, |t| data(t).0.n)?.with_grid(grid);
    let alpha = TrigSeries::fit(grid, |t| {
        let (f, s, v) = data(t);
        v * f.tau / s
    });
    let beta = TrigSeries::fit(grid, |t| {
        let (f, s, v) = data(t);
        -v * f.kappa / s
    });
    Ok(Quadruple::new(alpha, beta, xi, nu))
}

/// Default-grid build.
pub fn gallery_build_default(spec: &GallerySpec) -> Result<Quadruple> {
    gallery_build(spec, DEFAULT_GRID)
}
