//! Spherical and space curves.
//!
//! A [`SphericalCurve`] is the pointwise normalisation `γ = g/‖g‖` of a raw
//! closed curve `g` given as a trigonometric series; derivatives of `γ`
//! follow from those of `g` by the quotient rule, never by differencing.
//! The dual of `γ` is taken with the fixed orientation
//! `n = γ′×γ/‖γ′×γ‖`, which equals the normalisation of the exact series
//! `g′×g`, so duals of series curves are again series curves.
//!
//! Two geodesic-curvature conventions are in use:
//!
//! * the determinant form `κ_g = det(γ, γ′, γ″)/‖γ′‖³`, which depends only on
//!   the orientation of `γ` (vertices, convexity);
//! * the frame form `n′ = −κ_g γ′` with `n` the dual above, used for the
//!   spherical caustic. With this dual orientation it is the negative of the
//!   determinant form.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{atan, binomial, cos, grid, periodic_sign_changes, sin, sqrt, TAU};
use crate::series::{TrigCurve3, MAX_JET};
use crate::vec3::Vec3;

/// Default number of grid samples for curve diagnostics.
pub const DEFAULT_GRID: usize = 1024;
/// Base zero threshold, scaled by the relevant derivative magnitude.
pub const EPS_ZERO: f64 = 1e-8;
/// Longest polyline segment accepted by the self-intersection test.
pub const MAX_SEGMENT: f64 = 0.1;

/// Unit-sphere valued closed curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalCurve {
    raw: TrigCurve3,
    grid: usize,
}

impl SphericalCurve {
    /// Normalises `raw`; fails if `raw` passes through the origin.
    pub fn new(raw: TrigCurve3) -> Result<Self> {
        let c = SphericalCurve { raw, grid: DEFAULT_GRID };
        let scale = c.raw.max_coef().max(f64::MIN_POSITIVE);
        for t in grid(4 * c.grid) {
            let r = c.raw.eval(t).norm();
            if r <= 1e-10 * scale {
                return Err(Error::NonRegularCurve { t, speed: r });
            }
        }
        Ok(c)
    }

    /// The latitude circle `ξ_φ(t) = (cos t cos φ, sin t cos φ, sin φ)`.
    pub fn latitude(phi: f64) -> Self {
        SphericalCurve { raw: crate::series::latitude_circle(phi), grid: DEFAULT_GRID }
    }

    /// The equator `(cos t, sin t, 0)`.
    pub fn equator() -> Self {
        Self::latitude(0.0)
    }

    /// A constant point on the sphere.
    pub fn constant(p: Vec3) -> Result<Self> {
        Self::new(TrigCurve3::constant(p))
    }

    /// Spectral fit of a unit-vector valued function sampled on `n` points.
    pub fn fit(n: usize, f: impl Fn(f64) -> Vec3) -> Result<Self> {
        Self::new(TrigCurve3::fit(n, f))
    }

    pub fn with_grid(mut self, n: usize) -> Self {
        self.grid = n.max(8);
        self
    }

    pub fn raw(&self) -> &TrigCurve3 {
        &self.raw
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn eval(&self, t: f64) -> Vec3 {
        self.raw.eval(t).normalized()
    }

    /// `γ` and its derivatives up to `order` (at most [`MAX_JET`]).
    pub fn jet(&self, t: f64, order: usize) -> [Vec3; MAX_JET + 1] {
        normalized_jet(&self.raw.jet(t, order), order.min(MAX_JET))
    }

    /// The antipodal curve `−γ`.
    pub fn antipodal(&self) -> Self {
        SphericalCurve { raw: -self.raw.clone(), grid: self.grid }
    }

    /// Largest speed `‖γ′‖` on the grid.
    pub fn max_speed(&self) -> f64 {
        grid(self.grid).map(|t| self.jet(t, 1)[1].norm()).fold(0.0, f64::max)
    }

    /// Zero threshold for `γ′`-scaled quantities.
    pub fn eps_zero(&self) -> f64 {
        EPS_ZERO * self.max_speed().max(1.0)
    }

    /// Fails with [`Error::NonRegularCurve`] at the first grid point where
    /// `‖γ′‖ <= ε_zero`.
    pub fn check_regular(&self) -> Result<()> {
        let eps = self.eps_zero();
        for t in grid(self.grid) {
            let speed = self.jet(t, 1)[1].norm();
            if speed <= eps {
                return Err(Error::NonRegularCurve { t, speed });
            }
        }
        Ok(())
    }

    /// Unit tangent curve `γ′/‖γ′‖`, i.e. the derivative with respect to
    /// arclength. Its raw series `g′(g·g) − g(g·g′)` is exact.
    pub fn unit_tangent(&self) -> Result<SphericalCurve> {
        self.check_regular()?;
        let g = &self.raw;
        let gp = g.derivative(1);
        let raw = g.dot(g).mul_curve(&gp) - g.dot(&gp).mul_curve(g);
        Ok(SphericalCurve { raw, grid: self.grid })
    }

    /// Max over the grid of `|‖γ‖ − 1|` and `|γ·γ′|`.
    pub fn unit_residuals(&self) -> (f64, f64) {
        grid(self.grid).fold((0.0, 0.0), |(a, b), t| {
            let j = self.jet(t, 1);
            (f64::max(a, (j[0].norm() - 1.0).abs()), f64::max(b, j[0].dot(j[1]).abs()))
        })
    }
}

/// Derivatives of `g/‖g‖` from those of `g`.
///
/// With `r = ‖g‖` and `s = g·g = r²`: differentiating `r² = s` and `g = rγ`
/// by Leibniz gives recursions for `r⁽ⁿ⁾` and `γ⁽ⁿ⁾`.
fn normalized_jet(g: &[Vec3; MAX_JET + 1], order: usize) -> [Vec3; MAX_JET + 1] {
    let mut s = [0.0; MAX_JET + 1];
    for n in 0..=order {
        s[n] = (0..=n).map(|k| binomial(n, k) * g[k].dot(g[n - k])).sum();
    }
    let mut r = [0.0; MAX_JET + 1];
    r[0] = sqrt(s[0]);
    for n in 1..=order {
        let inner: f64 = (1..n).map(|k| binomial(n, k) * r[k] * r[n - k]).sum();
        r[n] = (s[n] - inner) / (2.0 * r[0]);
    }
    let mut out = [Vec3::ZERO; MAX_JET + 1];
    for n in 0..=order {
        let mut acc = g[n];
        for k in 1..=n {
            acc -= out[n - k] * (binomial(n, k) * r[k]);
        }
        out[n] = acc * (1.0 / r[0]);
    }
    out
}

/// Result of [`dual_curve`].
#[derive(Debug, Clone)]
pub struct DualCurve {
    pub curve: SphericalCurve,
    /// The dual itself is regular (γ has no inflection points).
    pub regular: bool,
    /// `n′` vanishes at every grid point (e.g. great circles).
    pub singular_everywhere: bool,
    /// Parameters where `n′` vanishes, i.e. zeros of `κ_g`.
    pub inflections: Vec<f64>,
}

/// The dual `n = γ′×γ/‖γ′×γ‖` with inflection diagnostics.
pub fn dual_curve(gamma: &SphericalCurve) -> Result<DualCurve> {
    gamma.check_regular()?;
    let g = gamma.raw();
    let raw = g.derivative(1).cross(g);
    let curve = SphericalCurve { raw, grid: gamma.grid };
    let eps = gamma.eps_zero();
    let n = gamma.grid;
    let mut flat = Vec::new();
    for t in grid(n) {
        if curve.jet(t, 1)[1].norm() <= eps {
            flat.push(t);
        }
    }
    let singular_everywhere = flat.len() == n;
    let mut inflections = if singular_everywhere {
        flat
    } else {
        let kg = |t: f64| kappa_det(&gamma.jet(t, 2));
        let mut roots = periodic_sign_changes(n, EPS_ZERO, 1e-13, kg);
        for t in flat {
            if !roots.iter().any(|r| (r - t).abs() < TAU / n as f64) {
                roots.push(t);
            }
        }
        roots.sort_by(|a, b| a.total_cmp(b));
        roots
    };
    inflections.dedup();
    Ok(DualCurve { curve, regular: inflections.is_empty(), singular_everywhere, inflections })
}

/// Values of `η = ξ×ν`, `μ1 = ξ′·η`, `μ2 = ν′·η` at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameValues {
    pub eta: Vec3,
    pub mu1: f64,
    pub mu2: f64,
    /// `‖ξ′ − μ1 η‖`
    pub xi_residual: f64,
    /// `‖ν′ − μ2 η‖`
    pub nu_residual: f64,
}

/// Frame functions of a dual pair at `t`.
pub fn frame_functions(xi: &SphericalCurve, nu: &SphericalCurve, t: f64) -> Result<FrameValues> {
    let x = xi.jet(t, 1);
    let n = nu.jet(t, 1);
    let eta = x[0].cross(n[0]);
    let mu1 = x[1].dot(eta);
    let mu2 = n[1].dot(eta);
    let xi_residual = (x[1] - eta * mu1).norm();
    let nu_residual = (n[1] - eta * mu2).norm();
    for (name, v) in [("xi' - mu1 eta", xi_residual), ("nu' - mu2 eta", nu_residual)] {
        if v.is_nan() || v > 1e-7 {
            return Err(Error::DualityViolation { residual: name, value: v });
        }
    }
    Ok(FrameValues { eta, mu1, mu2, xi_residual, nu_residual })
}

/// `det(γ, γ′, γ″)/‖γ′‖³`.
pub(crate) fn kappa_det(j: &[Vec3; MAX_JET + 1]) -> f64 {
    let p = j[1].norm_sq();
    Vec3::det(j[0], j[1], j[2]) / (p * sqrt(p))
}

/// First and second derivative of [`kappa_det`] (needs a jet of order 4).
fn kappa_det_derivatives(j: &[Vec3; MAX_JET + 1]) -> (f64, f64) {
    let d2 = Vec3::det(j[0], j[1], j[2]);
    let d2p = Vec3::det(j[0], j[1], j[3]);
    let d2pp = Vec3::det(j[0], j[2], j[3]) + Vec3::det(j[0], j[1], j[4]);
    let p = j[1].norm_sq();
    let pp = 2.0 * j[1].dot(j[2]);
    let ppp = 2.0 * (j[2].norm_sq() + j[1].dot(j[3]));
    let p32 = p * sqrt(p);
    let p52 = p32 * p;
    let p72 = p52 * p;
    let k1 = d2p / p32 - 1.5 * d2 * pp / p52;
    let k2 = d2pp / p32 - 3.0 * d2p * pp / p52 + 3.75 * d2 * pp * pp / p72 - 1.5 * d2 * ppp / p52;
    (k1, k2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Vertex {
    pub t: f64,
    pub kappa_g: f64,
    /// `κ_g″ ≠ 0` at the vertex.
    pub generic: bool,
}

/// Geodesic curvature (determinant convention) on the curve's grid.
#[derive(Debug, Clone)]
pub struct GeodesicCurvature {
    pub t: Vec<f64>,
    pub kappa_g: Vec<f64>,
    pub min: f64,
    pub max: f64,
    pub min_abs: f64,
    /// `max − min < 1e−9`; the vertex list is then empty.
    pub constant: bool,
    pub vertices: Vec<Vertex>,
}

pub fn geodesic_curvature(gamma: &SphericalCurve) -> Result<GeodesicCurvature> {
    gamma.check_regular()?;
    let ts: Vec<f64> = grid(gamma.grid).collect();
    let kappa_g: Vec<f64> = ts.iter().map(|&t| kappa_det(&gamma.jet(t, 2))).collect();
    let min = kappa_g.iter().copied().fold(f64::INFINITY, f64::min);
    let max = kappa_g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_abs = kappa_g.iter().map(|k| k.abs()).fold(f64::INFINITY, f64::min);
    let constant = max - min < 1e-9;
    let mut vertices = Vec::new();
    if !constant {
        let scale = min.abs().max(max.abs()).max(1.0);
        let dk = |t: f64| kappa_det_derivatives(&gamma.jet(t, 4)).0;
        for t in periodic_sign_changes(gamma.grid, 0.0, 1e-12, dk) {
            let j = gamma.jet(t, 4);
            let (_, k2) = kappa_det_derivatives(&j);
            vertices.push(Vertex { t, kappa_g: kappa_det(&j), generic: k2.abs() > EPS_ZERO * scale });
        }
    }
    Ok(GeodesicCurvature { t: ts, kappa_g, min, max, min_abs, constant, vertices })
}

/// Outcome of [`is_convex`].
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Convexity {
    pub convex: bool,
    /// Pairs of grid parameters of crossing polyline segments.
    pub self_intersections: Vec<(f64, f64)>,
    pub min_abs_kappa_g: f64,
}

/// Convex on the sphere: simple, and geodesic curvature bounded away from 0.
pub fn is_convex(gamma: &SphericalCurve) -> Result<Convexity> {
    gamma.check_regular()?;
    let n = gamma.grid;
    let pts: Vec<Vec3> = grid(n).map(|t| gamma.eval(t)).collect();
    let mut max_segment: f64 = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        max_segment = max_segment.max(crate::math::acos(a.dot(b)));
    }
    if max_segment > MAX_SEGMENT {
        return Err(Error::GridTooCoarse { max_segment });
    }
    let self_intersections = polyline_self_intersections(&pts);
    let min_abs_kappa_g = grid(n).map(|t| kappa_det(&gamma.jet(t, 2)).abs()).fold(f64::INFINITY, f64::min);
    let convex = self_intersections.is_empty() && min_abs_kappa_g > gamma.eps_zero();
    Ok(Convexity { convex, self_intersections, min_abs_kappa_g })
}

/// Crossings among non-adjacent great-circle arcs of a closed polyline.
fn polyline_self_intersections(pts: &[Vec3]) -> Vec<(f64, f64)> {
    let n = pts.len();
    let h = TAU / n as f64;
    let normals: Vec<Vec3> = (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).collect();
    let mids: Vec<Vec3> = (0..n).map(|i| (pts[i] + pts[(i + 1) % n]).normalized()).collect();
    let near = cos(2.0 * MAX_SEGMENT + 0.05);
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if mids[i].dot(mids[j]) < near {
                continue;
            }
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            let sc = c.dot(normals[i]);
            let sd = d.dot(normals[i]);
            let sa = a.dot(normals[j]);
            let sb = b.dot(normals[j]);
            if sc * sd < 0.0 && sa * sb < 0.0 {
                out.push((i as f64 * h, j as f64 * h));
            }
        }
    }
    out
}

/// The spherical parallel `γ_θ = γ cos θ + n sin θ`.
///
/// The result is refit on twice the curve's grid; for curves whose raw
/// series and dual have constant norm (latitude circles) it is exact.
pub fn spherical_parallel(gamma: &SphericalCurve, theta: f64) -> Result<SphericalCurve> {
    let dual = dual_curve(gamma)?.curve;
    let (c, s) = (cos(theta), sin(theta));
    let fit = SphericalCurve::fit(2 * gamma.grid, |t| gamma.eval(t) * c + dual.eval(t) * s)?;
    Ok(fit.with_grid(gamma.grid))
}

/// The spherical caustic (evolute) `c = γ cos A + n sin A`, `cot A = κ_g`.
#[derive(Debug, Clone)]
pub struct SphericalCaustic {
    gamma: SphericalCurve,
    dual: SphericalCurve,
    pub samples: Vec<Vec3>,
    pub diameter: f64,
    /// Image diameter below `1e−8`.
    pub is_point: bool,
}

impl SphericalCaustic {
    /// Geodesic curvature in the frame convention `n′ = −κ_g γ′`.
    pub fn kappa_frame(&self, t: f64) -> f64 {
        -kappa_det(&self.gamma.jet(t, 2))
    }

    /// `A(t) ∈ (−π/2, π/2)` solving `cos A − κ_g sin A = 0`.
    pub fn angle(&self, t: f64) -> f64 {
        atan(1.0 / self.kappa_frame(t))
    }

    pub fn eval(&self, t: f64) -> Vec3 {
        let a = self.angle(t);
        self.gamma.eval(t) * cos(a) + self.dual.eval(t) * sin(a)
    }
}

pub fn spherical_caustic(gamma: &SphericalCurve) -> Result<SphericalCaustic> {
    let dual = dual_curve(gamma)?.curve;
    let eps = EPS_ZERO;
    for t in grid(gamma.grid) {
        if kappa_det(&gamma.jet(t, 2)).abs() <= eps {
            return Err(Error::UmbilicDegenerate { t });
        }
    }
    // a sign change between grid points also means A passes through π/2
    let kg = |t: f64| kappa_det(&gamma.jet(t, 2));
    if let Some(&t) = periodic_sign_changes(gamma.grid, eps, 1e-12, kg).first() {
        return Err(Error::UmbilicDegenerate { t });
    }
    let mut c = SphericalCaustic { gamma: gamma.clone(), dual, samples: Vec::new(), diameter: 0.0, is_point: false };
    c.samples = grid(gamma.grid).map(|t| c.eval(t)).collect();
    c.diameter = diameter(&c.samples);
    c.is_point = c.diameter < 1e-8;
    Ok(c)
}

/// Largest pairwise distance.
pub(crate) fn diameter(pts: &[Vec3]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            d = d.max((p - q).norm());
        }
    }
    d
}

/// A space curve `c(t) = p(t) + t·w` with `p` closed; `w = 0` for closed
/// curves (a nonzero drift covers helices).
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceCurve {
    pub periodic: TrigCurve3,
    pub drift: Vec3,
}

/// Frenet apparatus at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frenet {
    pub e: Vec3,
    pub n: Vec3,
    pub b: Vec3,
    pub kappa: f64,
    pub tau: f64,
}

impl SpaceCurve {
    pub fn closed(curve: TrigCurve3) -> Self {
        SpaceCurve { periodic: curve, drift: Vec3::ZERO }
    }

    /// The circular helix `(r cos t, r sin t, h t)`.
    pub fn helix(r: f64, h: f64) -> Self {
        let periodic =
            TrigCurve3::new(Vec3::ZERO, alloc::vec![Vec3::new(r, 0.0, 0.0)], alloc::vec![Vec3::new(0.0, r, 0.0)]);
        SpaceCurve { periodic, drift: Vec3::new(0.0, 0.0, h) }
    }

    /// `c(t) = ((4 + cos 2t) cos t, (4 + cos 2t) sin t, sin 2t)`.
    pub fn twisted_torus_knot() -> Self {
        // (4 + cos 2t) cos t = 4 cos t + ½ cos t + ½ cos 3t, similarly for sin
        let cos = alloc::vec![Vec3::new(4.5, 0.0, 0.0), Vec3::ZERO, Vec3::new(0.5, 0.0, 0.0)];
        let sin = alloc::vec![Vec3::new(0.0, 3.5, 0.0), Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.5, 0.0)];
        SpaceCurve::closed(TrigCurve3::new(Vec3::ZERO, cos, sin))
    }

    pub fn is_closed(&self) -> bool {
        self.drift == Vec3::ZERO
    }

    pub fn eval(&self, t: f64) -> Vec3 {
        self.periodic.eval(t) + self.drift * t
    }

    /// `c`, `c′`, … up to `order`.
    pub fn jet(&self, t: f64, order: usize) -> [Vec3; MAX_JET + 1] {
        let mut j = self.periodic.jet(t, order);
        j[0] += self.drift * t;
        if order >= 1 {
            j[1] += self.drift;
        }
        j
    }

    /// Velocity series `c′` (periodic even when the curve drifts).
    pub fn velocity(&self) -> TrigCurve3 {
        self.periodic.derivative(1) + TrigCurve3::constant(self.drift)
    }

    pub fn frenet_data(&self, t: f64) -> Result<Frenet> {
        let j = self.jet(t, 3);
        let speed = j[1].norm();
        if speed <= EPS_ZERO {
            return Err(Error::NonRegularCurve { t, speed });
        }
        let c12 = j[1].cross(j[2]);
        let w = c12.norm();
        let kappa = w / (speed * speed * speed);
        if kappa <= EPS_ZERO {
            return Err(Error::VanishingCurvature { t });
        }
        let e = j[1] * (1.0 / speed);
        let b = c12 * (1.0 / w);
        let n = b.cross(e);
        let tau = Vec3::det(j[1], j[2], j[3]) / (w * w);
        Ok(Frenet { e, n, b, kappa, tau })
    }

    /// Fails with [`Error::VanishingCurvature`] where `κ <= ε_zero` on the grid.
    pub fn check_curved(&self, n: usize) -> Result<()> {
        for t in grid(n) {
            self.frenet_data(t)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;
    use crate::math::{FRAC_PI_2, PI};
    use crate::series::Trig;

    const R2: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn perturbed(eps: f64) -> SphericalCurve {
        let raw = crate::series::latitude_circle(PI / 4.0) + Trig::harmonic(3, Vec3::E3 * eps, Vec3::ZERO);
        SphericalCurve::new(raw).unwrap()
    }

    #[test]
    fn normalised_jet_matches_finite_differences() {
        let c = perturbed(0.2);
        let t = 0.9;
        let j = c.jet(t, 4);
        let h = 1e-4;
        #[allow(clippy::needless_range_loop)]
        for m in 1..=3 {
            let fd = (c.jet(t + h, 4)[m - 1] - c.jet(t - h, 4)[m - 1]) * (0.5 / h);
            assert!((fd - j[m]).norm() < 1e-6, "order {m}");
        }
        let fd4 = (c.jet(t + h, 3)[3] - c.jet(t - h, 3)[3]) * (0.5 / h);
        assert!((fd4 - j[4]).norm() < 1e-5);
    }

    #[test]
    fn unit_invariants_hold() {
        for c in [SphericalCurve::latitude(0.3), perturbed(0.05), perturbed(0.3)] {
            let (r1, r2) = c.unit_residuals();
            assert!(r1 < 1e-12 && r2 < 1e-10, "{r1} {r2}");
        }
    }

    #[test]
    fn dual_of_latitude() {
        let d = dual_curve(&SphericalCurve::latitude(PI / 4.0)).unwrap();
        assert!(d.regular);
        for t in grid(64) {
            let want = Vec3::new(R2 * cos(t), R2 * sin(t), -R2);
            assert!((d.curve.eval(t) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn dual_of_equator_is_singular() {
        let d = dual_curve(&SphericalCurve::equator()).unwrap();
        assert!(d.singular_everywhere);
        assert!(!d.regular);
        for t in grid(16) {
            assert!((d.curve.eval(t) - Vec3::new(0.0, 0.0, -1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn dual_is_involutive_up_to_sign() {
        for c in [SphericalCurve::latitude(PI / 4.0), perturbed(0.05)] {
            let dd = dual_curve(&dual_curve(&c).unwrap().curve).unwrap().curve;
            for t in grid(200) {
                assert!((dd.eval(t) + c.eval(t)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn dual_of_constant_fails() {
        let c = SphericalCurve::constant(Vec3::E3).unwrap();
        assert!(matches!(dual_curve(&c), Err(Error::NonRegularCurve { .. })));
    }

    #[test]
    fn frame_functions_on_latitude() {
        let xi = SphericalCurve::latitude(PI / 4.0);
        let nu = dual_curve(&xi).unwrap().curve;
        for t in grid(32) {
            let f = frame_functions(&xi, &nu, t).unwrap();
            assert!((f.mu1 - R2).abs() < 1e-14);
            assert!((f.mu2 - R2).abs() < 1e-14);
            assert!((f.eta - Vec3::new(-sin(t), cos(t), 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn frame_functions_on_equator() {
        let xi = SphericalCurve::equator();
        let nu = SphericalCurve::constant(Vec3::new(0.0, 0.0, -1.0)).unwrap();
        let f = frame_functions(&xi, &nu, 0.4).unwrap();
        assert!((f.mu1 - 1.0).abs() < 1e-15);
        assert_eq!(f.mu2, 0.0);
    }

    #[test]
    fn frame_functions_reject_non_dual_pair() {
        let xi = SphericalCurve::latitude(PI / 4.0);
        let nu = SphericalCurve::constant(Vec3::E3).unwrap();
        assert!(matches!(frame_functions(&xi, &nu, 0.3), Err(Error::DualityViolation { .. })));
    }

    #[test]
    fn geodesic_curvature_of_circles() {
        let k = geodesic_curvature(&SphericalCurve::latitude(PI / 4.0)).unwrap();
        assert!(k.constant && k.vertices.is_empty());
        assert!((k.min - 1.0).abs() < 1e-12 && (k.max - 1.0).abs() < 1e-12);
        let phi = 0.4;
        let k = geodesic_curvature(&SphericalCurve::latitude(phi)).unwrap();
        assert!((k.max - libm::tan(phi)).abs() < 1e-12);
        let k = geodesic_curvature(&SphericalCurve::equator()).unwrap();
        assert!(k.max.abs() < 1e-15 && k.min.abs() < 1e-15);
    }

    #[test]
    fn geodesic_curvature_derivatives_match_differences() {
        let c = perturbed(0.1);
        let t = 1.3;
        let h = 1e-4;
        let k = |t: f64| kappa_det(&c.jet(t, 2));
        let (k1, k2) = kappa_det_derivatives(&c.jet(t, 4));
        assert!(((k(t + h) - k(t - h)) / (2.0 * h) - k1).abs() < 1e-6);
        assert!(((k(t + h) - 2.0 * k(t) + k(t - h)) / (h * h) - k2).abs() < 1e-4);
    }

    #[test]
    fn perturbed_latitude_has_even_vertices() {
        let k = geodesic_curvature(&perturbed(0.05)).unwrap();
        assert!(!k.constant);
        assert!(k.vertices.len() >= 4 && k.vertices.len().is_multiple_of(2));
        assert!(k.vertices.iter().all(|v| v.generic));
    }

    #[test]
    fn convexity_of_latitude_and_equator() {
        let c = is_convex(&SphericalCurve::latitude(PI / 4.0)).unwrap();
        assert!(c.convex && c.self_intersections.is_empty());
        let c = is_convex(&SphericalCurve::equator()).unwrap();
        assert!(!c.convex);
    }

    #[test]
    fn convexity_detects_figure_eight() {
        // (sin 2t, cos t ... ) lifted onto the upper hemisphere crosses itself
        let raw = Trig::new(
            Vec3::new(0.0, 0.0, 2.0),
            alloc::vec![Vec3::new(0.0, 1.0, 0.0)],
            alloc::vec![Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0)],
        );
        let c = is_convex(&SphericalCurve::new(raw).unwrap()).unwrap();
        assert!(!c.convex);
        assert!(!c.self_intersections.is_empty());
    }

    #[test]
    fn convexity_rejects_coarse_grid() {
        let c = SphericalCurve::equator().with_grid(32);
        assert!(matches!(is_convex(&c), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn parallel_of_latitude_shifts_latitude() {
        let xi = SphericalCurve::latitude(PI / 4.0);
        let p0 = spherical_parallel(&xi, 0.0).unwrap();
        let p = spherical_parallel(&xi, 0.3).unwrap();
        let want = SphericalCurve::latitude(PI / 4.0 - 0.3);
        for t in grid(50) {
            assert!((p0.eval(t) - xi.eval(t)).norm() < 1e-13);
            assert!((p.eval(t) - want.eval(t)).norm() < 1e-13);
        }
        let half = spherical_parallel(&xi, FRAC_PI_2).unwrap();
        let dual = dual_curve(&xi).unwrap().curve;
        for t in grid(50) {
            assert!((half.eval(t) - dual.eval(t)).norm() < 1e-12);
        }
    }

    #[test]
    fn caustic_of_latitude_is_pole() {
        let c = spherical_caustic(&SphericalCurve::latitude(PI / 4.0)).unwrap();
        assert!(c.is_point);
        assert!((c.angle(0.3) + PI / 4.0).abs() < 1e-12);
        assert!((c.eval(1.0) - Vec3::E3).norm() < 1e-12);
    }

    #[test]
    fn caustic_frame_convention() {
        // n' = −κ γ' with κ the frame curvature
        let g = perturbed(0.05);
        let n = dual_curve(&g).unwrap().curve;
        let c = spherical_caustic(&g).unwrap();
        for t in grid(40) {
            let gj = g.jet(t, 1);
            let nj = n.jet(t, 1);
            assert!((nj[1] + gj[1] * c.kappa_frame(t)).norm() < 1e-12);
        }
    }

    #[test]
    fn caustic_of_equator_is_degenerate() {
        assert!(matches!(spherical_caustic(&SphericalCurve::equator()), Err(Error::UmbilicDegenerate { .. })));
    }

    #[test]
    fn frenet_of_circle_and_helix() {
        let circle = SpaceCurve::closed(crate::series::latitude_circle(0.0));
        let f = circle.frenet_data(0.7).unwrap();
        assert!((f.kappa - 1.0).abs() < 1e-14 && f.tau.abs() < 1e-14);
        let helix = SpaceCurve::helix(R2, R2);
        for t in [0.0, 1.0, 4.0] {
            let f = helix.frenet_data(t).unwrap();
            // κ = r/(r²+h²), τ = h/(r²+h²)
            assert!((f.kappa - R2).abs() < 1e-14);
            assert!((f.tau - R2).abs() < 1e-14);
            assert!((f.e.cross(f.n) - f.b).norm() < 1e-14);
        }
    }

    #[test]
    fn frenet_of_knot_at_origin() {
        let c = SpaceCurve::twisted_torus_knot();
        assert!((c.eval(0.0) - Vec3::new(5.0, 0.0, 0.0)).norm() < 1e-14);
        assert!(
            (c.eval(1.1) - {
                let r = 4.0 + cos(2.2);
                Vec3::new(r * cos(1.1), r * sin(1.1), sin(2.2))
            })
            .norm()
                < 1e-13
        );
        // finite-difference oracle on the closed-form curve
        let p = |t: f64| {
            let r = 4.0 + cos(2.0 * t);
            Vec3::new(r * cos(t), r * sin(t), sin(2.0 * t))
        };
        let h = 1e-3;
        let d1 = (p(h) - p(-h)) * (0.5 / h);
        let d2 = (p(h) - p(0.0) * 2.0 + p(-h)) * (1.0 / (h * h));
        let d3 = (p(2.0 * h) - p(h) * 2.0 + p(-h) * 2.0 - p(-2.0 * h)) * (0.5 / (h * h * h));
        let w = d1.cross(d2);
        let kappa = w.norm() / d1.norm().powi(3);
        let tau = Vec3::det(d1, d2, d3) / w.norm_sq();
        let f = c.frenet_data(0.0).unwrap();
        assert!((f.kappa - kappa).abs() < 1e-6, "{} {}", f.kappa, kappa);
        assert!((f.tau - tau).abs() < 1e-6, "{} {}", f.tau, tau);
    }

    #[test]
    fn frenet_rejects_straight_line() {
        let line = SpaceCurve { periodic: TrigCurve3::zero(), drift: Vec3::E1 };
        assert!(matches!(line.frenet_data(0.0), Err(Error::VanishingCurvature { .. })));
    }
}
