//! Parallel fronts, caustics, curvature lines and completeness criteria.

use alloc::vec::Vec;

use crate::curves::{is_convex, SphericalCurve};
use crate::error::{Error, Result};
use crate::frontal::{front_condition, period_residual, Quadruple, PERIOD_DEFECT_TOL};
use crate::math::{grid, sqrt, TAU};
use crate::series::TrigSeries;
use crate::singularities::singular_locus;
use crate::vec3::Vec3;

/// Sup-norm variation below which a fitted curve counts as constant.
pub const CONSTANT_TOL: f64 = 1e-9;
/// Closure tolerance of curvature lines.
pub const CLOSURE_TOL: f64 = 1e-10;

/// The parallel front `f + δν̂`: `(α, β + δ μ2 dt, ξ̂, ν̂)`.
pub fn parallel(q: &Quadruple, delta: f64) -> Quadruple {
    if delta == 0.0 {
        return q.clone();
    }
    let beta = TrigSeries::fit(q.grid(), |t| q.beta.eval(t) + delta * q.mu2(t));
    Quadruple { beta, ..q.clone() }
}

fn check_umbilic_free(q: &Quadruple) -> Result<f64> {
    let eps = q.eps_zero();
    for t in grid(q.grid()) {
        if q.mu2(t).abs() <= eps {
            return Err(Error::UmbilicDegenerate { t });
        }
    }
    Ok(eps)
}

/// Caustic (focal surface) of a front together with its degeneracy flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Caustic {
    pub quadruple: Quadruple,
    /// The ruling direction `c_ξ` is constant: the caustic is a cylinder
    /// over a plane curve, or a line.
    pub ruling_constant: bool,
    /// Constant ruling and vanishing `a`, `b`: the caustic is a single line
    /// and has no surface to mesh.
    pub degenerate_line: bool,
}

/// Quadruple of the caustic `C_f = f + ρν̂`:
/// `c_ξ = (μ2ξ̂ − μ1ν̂)/s`, `c_ν = η̂`,
/// `a_c = (aμ2 + (b/μ2)′μ1)/s`, `b_c = (−aμ1 + (b/μ2)′μ2)/s`
/// with `s = √(μ1² + μ2²)`.
pub fn caustic(q: &Quadruple) -> Result<Caustic> {
    let eps = check_umbilic_free(q)?;
    let n = q.grid();
    let coeffs = |t: f64| {
        let l = q.local(t);
        let (m1, m2) = (l.mu1[0], l.mu2[0]);
        let s = sqrt(m1 * m1 + m2 * m2);
        let w = (l.b[1] * m2 - l.b[0] * l.mu2[1]) / (m2 * m2);
        (l, m1, m2, s, w)
    };
    let alpha = TrigSeries::fit(n, |t| {
        let (l, m1, m2, s, w) = coeffs(t);
        (l.a[0] * m2 + w * m1) / s
    });
    let beta = TrigSeries::fit(n, |t| {
        let (l, m1, m2, s, w) = coeffs(t);
        (-l.a[0] * m1 + w * m2) / s
    });
    let xi = SphericalCurve::fit(n, |t| {
        let (l, m1, m2, s, _) = coeffs(t);
        (l.xi * m2 - l.nu * m1) * (1.0 / s)
    })?
    .with_grid(n);
    let nu = SphericalCurve::fit(n, |t| q.eta(t))?.with_grid(n);
    let ruling_constant =
        xi.raw().coef_distance(&crate::series::TrigCurve3::constant(xi.raw().constant)) < CONSTANT_TOL;
    let degenerate_line = ruling_constant && alpha.sup_on_grid(n) <= eps && beta.sup_on_grid(n) <= eps;
    Ok(Caustic { quadruple: Quadruple::new(alpha, beta, xi, nu), ruling_constant, degenerate_line })
}

/// Principal curvature radius `ρ = −(b + vμ1)/μ2`.
pub fn curvature_radius(q: &Quadruple, t: f64, v: f64) -> Result<f64> {
    let mu2 = q.mu2(t);
    if mu2.abs() <= q.eps_zero() {
        return Err(Error::UmbilicDegenerate { t });
    }
    Ok(-(q.beta.eval(t) + v * q.mu1(t)) / mu2)
}

/// Curvature line `v′ + a = 0` through `(t0, v0)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurvatureLine {
    pub t0: f64,
    pub v0: f64,
    /// Primitive of `a − mean(a)`.
    primitive: TrigSeries,
    mean: f64,
    pub t: Vec<f64>,
    pub v: Vec<f64>,
    /// `v(t0 + 2π) − v(t0) = −2π·mean(a)`.
    pub defect: f64,
    pub closed: bool,
}

impl CurvatureLine {
    pub fn eval(&self, t: f64) -> f64 {
        self.v0 - (self.primitive.eval(t) - self.primitive.eval(self.t0)) - self.mean * (t - self.t0)
    }
}

/// Integrates the curvature line over `turns` periods with
/// `samples_per_turn` output points per period.
pub fn curvature_line(q: &Quadruple, t0: f64, v0: f64, turns: usize, samples_per_turn: usize) -> CurvatureLine {
    let mean = q.alpha.mean();
    let mut centred = q.alpha.clone();
    centred.constant = 0.0;
    let primitive = centred.primitive_periodic();
    let defect = -TAU * mean;
    let mut line = CurvatureLine {
        t0,
        v0,
        primitive,
        mean,
        t: Vec::new(),
        v: Vec::new(),
        defect,
        closed: defect.abs() < CLOSURE_TOL,
    };
    let total = turns.max(1) * samples_per_turn.max(1);
    let h = TAU / samples_per_turn.max(1) as f64;
    for i in 0..=total {
        let t = t0 + i as f64 * h;
        line.t.push(t);
        line.v.push(line.eval(t));
    }
    line
}

/// Coefficients `(E#, F#, G#)` of the lift metric `df·df + dν·dν` in `(t, v)`.
pub fn lift_metric_coeffs(q: &Quadruple, t: f64, v: f64) -> (f64, f64, f64) {
    let l = q.local(t);
    let lam = l.b[0] + v * l.mu1[0];
    (l.a[0] * l.a[0] + lam * lam + l.mu2[0] * l.mu2[0], l.a[0], 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CompletenessReport {
    pub is_front: bool,
    pub weakly_complete: bool,
    /// Some rulings are fronts only through the umbilic branch
    /// (`ξ̂′ = ν̂′ = 0`, `b ≠ 0`).
    pub umbilic_caveat: bool,
    pub complete: bool,
    /// `b ≡ 0`: the generator is a curve of singular points or a regular
    /// curve on the surface.
    pub normal_form: bool,
    pub singular_set_nonempty: bool,
    pub singular_set_compact: bool,
    /// Convexity of `ξ̂`; defined only for complete fronts with singular points.
    pub ends_embedded: Option<bool>,
    pub min_abs_mu1: f64,
    pub min_abs_mu2: f64,
    pub period_defect: f64,
}

/// Front, completeness and embeddedness verdicts for a closed quadruple.
pub fn completeness_report(q: &Quadruple) -> Result<CompletenessReport> {
    let defect = period_residual(q).norm();
    if defect > PERIOD_DEFECT_TOL {
        return Err(Error::PeriodConditionViolated { defect });
    }
    let eps = q.eps_zero();
    let fc = front_condition(q);
    let locus = singular_locus(q, q.grid())?;
    let (mut min1, mut min2, mut max_b) = (f64::INFINITY, f64::INFINITY, 0.0_f64);
    for t in grid(q.grid()) {
        min1 = min1.min(q.mu1(t).abs());
        min2 = min2.min(q.mu2(t).abs());
        max_b = max_b.max(q.beta.eval(t).abs());
    }
    let normal_form = max_b <= eps;
    let nonempty = !locus.samples.is_empty();
    let compact = locus.counts.whole_ruling_singular == 0;
    let weakly_complete = fc.is_front;
    let complete = weakly_complete && if normal_form { min1 > eps && min2 > eps } else { nonempty && compact };
    let ends_embedded = if complete && nonempty { Some(is_convex(&q.xi)?.convex) } else { None };
    Ok(CompletenessReport {
        is_front: fc.is_front,
        weakly_complete,
        umbilic_caveat: !fc.umbilic_rulings.is_empty(),
        complete,
        normal_form,
        singular_set_nonempty: nonempty,
        singular_set_compact: compact,
        ends_embedded,
        min_abs_mu1: min1,
        min_abs_mu2: min2,
        period_defect: defect,
    })
}

/// Rulings of the parallel front are the rulings of `f` moved by `δν̂(t)`:
/// returns `sup |f_δ(t, v) − f(t, v) − δν̂(t) − c|` on a small `(t, v)` grid,
/// with `c` the offset at `(0, 0)`.
pub fn parallel_translation_residual(q: &Quadruple, delta: f64) -> Result<f64> {
    let f = crate::frontal::build_front(q)?;
    let g = crate::frontal::build_front(&parallel(q, delta))?;
    let offset: Vec3 = g.f(0.0, 0.0) - f.f(0.0, 0.0) - f.normal(0.0) * delta;
    let mut worst = 0.0_f64;
    for t in grid(64) {
        for v in [-1.0, 0.0, 0.5, 2.0] {
            let d = g.f(t, v) - f.f(t, v) - f.normal(t) * delta - offset;
            worst = worst.max(d.norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;
    use crate::curves::dual_curve;
    use crate::math::PI;
    use crate::series::Trig;

    const R2: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn latitude_q(a: TrigSeries) -> Quadruple {
        let xi = SphericalCurve::latitude(PI / 4.0);
        let nu = dual_curve(&xi).unwrap().curve;
        Quadruple::new(a, TrigSeries::zero(), xi, nu)
    }

    #[test]
    fn parallel_of_cone_and_example52() {
        let q = latitude_q(TrigSeries::zero());
        assert_eq!(parallel(&q, 0.0), q);
        let p = parallel(&q, 2.0);
        assert!(p.beta.coef_distance(&TrigSeries::constant(2.0 * R2)) < 1e-14);
        // singular circle at v = −δ
        assert!((p.beta.eval(1.0) + q.mu1(1.0) * -2.0).abs() < 1e-14);
        let q = latitude_q(Trig::harmonic(2, 1.0, 0.0));
        let p = parallel(&q, 0.3);
        assert!(p.alpha == q.alpha);
        assert!(p.beta.coef_distance(&TrigSeries::constant(0.3 * R2)) < 1e-14);
    }

    #[test]
    fn caustic_of_example52_is_cylinder() {
        let c = caustic(&latitude_q(Trig::harmonic(2, 1.0, 0.0))).unwrap();
        assert!((c.quadruple.xi.eval(0.7) - Vec3::E3).norm() < 1e-14);
        let want = Vec3::new(-libm::sin(0.7), libm::cos(0.7), 0.0);
        assert!((c.quadruple.nu.eval(0.7) - want).norm() < 1e-14);
        assert!(c.ruling_constant && !c.degenerate_line);
    }

    #[test]
    fn caustic_of_cone_is_a_line() {
        let c = caustic(&latitude_q(TrigSeries::zero())).unwrap();
        assert!(c.degenerate_line);
    }

    #[test]
    fn caustic_refuses_umbilics() {
        let q = Quadruple::new(
            TrigSeries::zero(),
            TrigSeries::zero(),
            SphericalCurve::equator(),
            SphericalCurve::constant(Vec3::new(0.0, 0.0, -1.0)).unwrap(),
        );
        assert!(matches!(caustic(&q), Err(Error::UmbilicDegenerate { .. })));
        assert!(matches!(curvature_radius(&q, 0.0, 1.0), Err(Error::UmbilicDegenerate { .. })));
    }

    #[test]
    fn caustic_is_parallel_invariant() {
        let q = latitude_q(Trig::harmonic(2, 1.0, 0.0));
        let c0 = caustic(&q).unwrap().quadruple;
        for d in [-1.0, 0.3, 2.0] {
            let c = caustic(&parallel(&q, d)).unwrap().quadruple;
            assert!(c.alpha.coef_distance(&c0.alpha) < 1e-10);
            assert!(c.beta.coef_distance(&c0.beta) < 1e-10);
        }
    }

    #[test]
    fn curvature_radius_examples() {
        let q = latitude_q(TrigSeries::zero());
        assert!((curvature_radius(&q, 0.3, 1.7).unwrap() + 1.7).abs() < 1e-14);
        let p = parallel(&q, 0.4);
        let (r, rp) = (curvature_radius(&q, 1.0, 0.2).unwrap(), curvature_radius(&p, 1.0, 0.2).unwrap());
        assert!((rp - (r - 0.4)).abs() < 1e-12);
    }

    #[test]
    fn curvature_line_examples() {
        let l = curvature_line(&latitude_q(Trig::harmonic(2, 1.0, 0.0)), 0.0, 1.0, 2, 64);
        for (t, v) in l.t.iter().zip(&l.v) {
            assert!((v - (1.0 - libm::sin(2.0 * t) / 2.0)).abs() < 1e-14);
        }
        assert!(l.closed && l.defect == 0.0);
        let l = curvature_line(&latitude_q(TrigSeries::zero()), 0.3, 2.5, 1, 16);
        assert!(l.v.iter().all(|&v| v == 2.5));
        let l = curvature_line(&latitude_q(Trig::new(1.0, alloc::vec![0.0, 1.0], alloc::vec![])), 0.0, 0.0, 1, 8);
        assert!((l.defect + TAU).abs() < 1e-15 && !l.closed);
    }

    #[test]
    fn lift_metric_examples() {
        let (e, f, g) = lift_metric_coeffs(&latitude_q(TrigSeries::zero()), 0.4, 3.0);
        assert!((e - 5.0).abs() < 1e-13 && f == 0.0 && g == 1.0);
        let (e, f, _) = lift_metric_coeffs(&latitude_q(Trig::harmonic(2, 1.0, 0.0)), 0.0, 0.0);
        assert!((e - 1.5).abs() < 1e-14 && (f - 1.0).abs() < 1e-15);
    }

    #[test]
    fn example52_is_complete_with_embedded_ends() {
        let r = completeness_report(&latitude_q(Trig::harmonic(2, 1.0, 0.0))).unwrap();
        assert!(r.is_front && r.weakly_complete && r.complete);
        assert_eq!(r.ends_embedded, Some(true));
    }

    #[test]
    fn open_generator_is_refused() {
        let q = latitude_q(TrigSeries::constant(1.0));
        assert!(matches!(completeness_report(&q), Err(Error::PeriodConditionViolated { .. })));
    }

    #[test]
    fn parallel_moves_rulings_along_normal() {
        let q = latitude_q(Trig::harmonic(3, 1.0, 0.0));
        assert!(parallel_translation_residual(&q, 0.7).unwrap() < 1e-9);
    }
}
