//! Singular set `{μ1 v + b = 0}` of a developable front and the
//! cuspidal-edge / swallowtail criteria.

use alloc::vec::Vec;

use crate::curves::{diameter, EPS_ZERO};
use crate::error::{Error, Result};
use crate::frontal::{build_front, Local, Quadruple};
use crate::math::{bisect, grid, periodic_sign_changes, wrap_angle, TAU};
use crate::series::TrigSeries;
use crate::vec3::Vec3;

/// Diameter below which the singular image is reported as a cone point.
pub const CONE_POINT_DIAMETER: f64 = 1e-8;
/// Default (δ, t) resolution of the Γ-set scan.
pub const GAMMA_RESOLUTION: (usize, usize) = (512, 2048);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SingularClass {
    CuspidalEdge,
    Swallowtail,
    LinearCuspidalEdge,
    Degenerate,
    /// `μ1 = b = 0`: the whole ruling is singular.
    WholeRulingSingular,
}

impl SingularClass {
    pub fn name(self) -> &'static str {
        match self {
            SingularClass::CuspidalEdge => "CuspidalEdge",
            SingularClass::Swallowtail => "Swallowtail",
            SingularClass::LinearCuspidalEdge => "LinearCuspidalEdge",
            SingularClass::Degenerate => "Degenerate",
            SingularClass::WholeRulingSingular => "WholeRulingSingular",
        }
    }

    pub fn is_cusp(self) -> bool {
        matches!(self, SingularClass::CuspidalEdge | SingularClass::LinearCuspidalEdge)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SingularSample {
    pub t: f64,
    pub v: f64,
    pub class: SingularClass,
    pub a: f64,
    pub a_prime: f64,
    pub mu1: f64,
    pub mu2: f64,
    /// `(b/μ1)′`, only where `μ1 ≠ 0`.
    pub q_prime: Option<f64>,
    /// `(b/μ1)″`, only where `μ1 ≠ 0`.
    pub q_second: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassCounts {
    pub cuspidal_edge: usize,
    pub swallowtail: usize,
    pub linear_cuspidal_edge: usize,
    pub degenerate: usize,
    pub whole_ruling_singular: usize,
}

impl ClassCounts {
    fn add(&mut self, c: SingularClass) {
        match c {
            SingularClass::CuspidalEdge => self.cuspidal_edge += 1,
            SingularClass::Swallowtail => self.swallowtail += 1,
            SingularClass::LinearCuspidalEdge => self.linear_cuspidal_edge += 1,
            SingularClass::Degenerate => self.degenerate += 1,
            SingularClass::WholeRulingSingular => self.whole_ruling_singular += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.cuspidal_edge + self.swallowtail + self.linear_cuspidal_edge + self.degenerate + self.whole_ruling_singular
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SingularReport {
    /// Sorted by `t`.
    pub samples: Vec<SingularSample>,
    pub counts: ClassCounts,
    /// Diameter of the image of the singular curve `f(t, v(t))`.
    pub image_diameter: f64,
    pub cone_point: Option<Vec3>,
    /// Maximal runs of samples that are not cuspidal edges.
    pub noncusp_count: usize,
    /// Some non-cusp run is longer than a single point (a whole interval of
    /// degenerate points, counted as one).
    pub noncusp_intervals: bool,
}

/// `q = b/μ1` and its first two derivatives.
fn quotient_derivatives(l: &Local) -> (f64, f64, f64) {
    let m = l.mu1;
    let q = l.b[0] / m[0];
    let q1 = (l.b[1] - q * m[1]) / m[0];
    let q2 = (l.b[2] - 2.0 * q1 * m[1] - q * m[2]) / m[0];
    (q, q1, q2)
}

fn classify_local(l: &Local, v0: f64, eps: f64) -> SingularSample {
    let mut s = SingularSample {
        t: l.t,
        v: v0,
        class: SingularClass::Degenerate,
        a: l.a[0],
        a_prime: l.a[1],
        mu1: l.mu1[0],
        mu2: l.mu2[0],
        q_prime: None,
        q_second: None,
    };
    let mu2_ok = l.mu2[0].abs() > eps;
    if l.mu1[0].abs() > eps {
        let (q, q1, q2) = quotient_derivatives(l);
        s.v = -q;
        s.q_prime = Some(q1);
        s.q_second = Some(q2);
        s.class = if mu2_ok && (l.a[0] - q1).abs() > eps {
            SingularClass::CuspidalEdge
        } else if mu2_ok && (l.a[1] - q2).abs() > eps {
            SingularClass::Swallowtail
        } else {
            SingularClass::Degenerate
        };
    } else if mu2_ok && (v0 * l.mu1[1] + l.b[1]).abs() > eps {
        s.class = SingularClass::LinearCuspidalEdge;
    }
    s
}

/// Classifies the singular point on the ruling `t0`.
///
/// On a non-linear ruling the singular point is `v = −b/μ1` and `v0` is only
/// checked if given. On a linear ruling (`μ1 = 0`) the whole ruling must be
/// singular and `v0` (default 0) selects the point.
pub fn classify_singular(q: &Quadruple, t0: f64, v0: Option<f64>) -> Result<SingularSample> {
    classify_with_eps(q, t0, v0, q.eps_zero())
}

fn classify_with_eps(q: &Quadruple, t0: f64, v0: Option<f64>, eps: f64) -> Result<SingularSample> {
    let l = q.local(t0);
    let linear = l.mu1[0].abs() <= eps;
    if linear && l.b[0].abs() > eps {
        return Err(Error::NotOnSingularLocus { t: t0, residual: l.b[0].abs() });
    }
    if let (false, Some(v)) = (linear, v0) {
        let r = (l.mu1[0] * v + l.b[0]).abs();
        if r > eps {
            return Err(Error::NotOnSingularLocus { t: t0, residual: r });
        }
    }
    Ok(classify_local(&l, v0.unwrap_or(0.0), eps))
}

/// Roots of `f` on the stretches where `vals` is defined: consecutive
/// defined samples with `|f| > eps` and opposite signs are bisected.
fn stretch_roots(ts: &[f64], vals: &[Option<f64>], eps: f64, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let n = ts.len();
    let h = TAU / n as f64;
    let tol = 1e-15;
    if vals.iter().all(|v| v.is_some()) {
        return periodic_sign_changes(n, eps, tol, f);
    }
    let Some(start) = vals.iter().position(|v| v.is_none()) else {
        return Vec::new();
    };
    let mut roots = Vec::new();
    let mut last: Option<(usize, f64)> = None;
    for k in 1..=n {
        let i = (start + k) % n;
        match vals[i] {
            None => last = None,
            Some(v) if v.abs() <= eps => {}
            Some(v) => {
                if let Some((j, u)) = last {
                    if (u > 0.0) != (v > 0.0) {
                        let lo = (start + j) as f64 * h;
                        let hi = (start + k) as f64 * h;
                        roots.push(wrap_angle(bisect(lo, hi, tol, &f)));
                    }
                }
                last = Some((k, v));
            }
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots
}

/// Samples the singular set on an `n`-point grid.
///
/// Non-linear rulings contribute `v = −b/μ1`; the zeros of `a − (b/μ1)′` are
/// located by bisection and added so that swallowtails between grid points
/// are not missed. Linear rulings with `b = 0` (on the grid or at bisected
/// zeros of `b`) are tagged [`SingularClass::WholeRulingSingular`] at `v = 0`.
pub fn singular_locus(q: &Quadruple, n_samples: usize) -> Result<SingularReport> {
    if n_samples < 4 {
        return Err(Error::InvalidParameter { name: "n_samples", reason: "must be at least 4" });
    }
    let front = build_front(q)?;
    let eps = q.eps_zero();
    let ts: Vec<f64> = grid(n_samples).collect();
    let locals: Vec<Local> = ts.iter().map(|&t| q.local(t)).collect();
    let nonlinear: Vec<Option<f64>> =
        locals.iter().map(|l| (l.mu1[0].abs() > eps).then(|| l.a[0] - quotient_derivatives(l).1)).collect();
    let linear_b: Vec<Option<f64>> = locals.iter().map(|l| (l.mu1[0].abs() <= eps).then_some(l.b[0])).collect();

    let h_fn = |t: f64| {
        let l = q.local(t);
        l.a[0] - quotient_derivatives(&l).1
    };
    let h_roots = stretch_roots(&ts, &nonlinear, eps, h_fn);
    let b_roots = stretch_roots(&ts, &linear_b, eps, |t| q.beta.eval(t));

    let spacing = TAU / n_samples as f64;
    let near_refined = |t: f64| {
        h_roots.iter().chain(b_roots.iter()).any(|&r| {
            let d = (t - r).abs();
            d.min(TAU - d) < 1e-9 * spacing.max(1.0)
        })
    };

    let mut samples = Vec::new();
    for l in &locals {
        if near_refined(l.t) {
            continue;
        }
        if l.mu1[0].abs() > eps {
            samples.push(classify_local(l, 0.0, eps));
        } else if l.b[0].abs() <= eps {
            let mut s = classify_local(l, 0.0, eps);
            s.class = SingularClass::WholeRulingSingular;
            samples.push(s);
        }
    }
    for &t in &h_roots {
        let l = q.local(t);
        if l.mu1[0].abs() > eps {
            samples.push(classify_local(&l, 0.0, eps));
        }
    }
    for &t in &b_roots {
        let l = q.local(t);
        let mut s = classify_local(&l, 0.0, eps);
        s.class = SingularClass::WholeRulingSingular;
        samples.push(s);
    }
    samples.sort_by(|a, b| a.t.total_cmp(&b.t));

    let mut counts = ClassCounts::default();
    for s in &samples {
        counts.add(s.class);
    }
    let image: Vec<Vec3> = samples.iter().map(|s| front.f(s.t, s.v)).collect();
    let image_diameter = diameter(&image);
    let cone_point = (!image.is_empty() && counts.whole_ruling_singular == 0 && image_diameter < CONE_POINT_DIAMETER)
        .then(|| image.iter().fold(Vec3::ZERO, |acc, &p| acc + p) * (1.0 / image.len() as f64));
    let (noncusp_count, noncusp_intervals) = count_noncusp(q, &samples, spacing, eps);
    Ok(SingularReport { samples, counts, image_diameter, cone_point, noncusp_count, noncusp_intervals })
}

/// Counts maximal cyclic runs of non-cusp samples. Samples further apart
/// than 1.5 grid steps belong to different components of the locus.
fn count_noncusp(q: &Quadruple, samples: &[SingularSample], spacing: f64, eps: f64) -> (usize, bool) {
    let m = samples.len();
    if m == 0 {
        return (0, false);
    }
    let noncusp: Vec<bool> = samples
        .iter()
        .map(|s| match s.class {
            SingularClass::WholeRulingSingular => {
                let l = q.local(s.t);
                !classify_local(&l, 0.0, eps).class.is_cusp()
            }
            c => !c.is_cusp(),
        })
        .collect();
    let adjacent = |i: usize| {
        let j = (i + 1) % m;
        let mut d = samples[j].t - samples[i].t;
        if j == 0 {
            d += TAU;
        }
        d <= 1.5 * spacing
    };
    if noncusp.iter().all(|&x| x) {
        let closed = (0..m).all(adjacent);
        if closed {
            return (1, true);
        }
    }
    // walk from a position where a run cannot continue from the previous sample
    let start = (0..m).find(|&i| !noncusp[i] || !adjacent((i + m - 1) % m)).unwrap_or(0);
    let mut runs = 0;
    let mut long = false;
    let mut len = 0usize;
    for k in 0..m {
        let i = (start + k) % m;
        let prev = (i + m - 1) % m;
        if noncusp[i] {
            if k > 0 && noncusp[prev] && adjacent(prev) {
                len += 1;
            } else {
                runs += 1;
                len = 1;
            }
            if len > 1 {
                long = true;
            }
        }
    }
    (runs, long)
}

/// Number of non-cuspidal connected pieces of the singular set, on the
/// quadruple's own grid.
pub fn noncusp_count(q: &Quadruple) -> Result<usize> {
    let r = singular_locus(q, q.grid())?;
    if r.samples.is_empty() {
        return Err(Error::EmptySingularLocus);
    }
    Ok(r.noncusp_count)
}

/// Number of sign changes of `a` over one period.
pub fn sign_changes(a: &TrigSeries) -> usize {
    let n = (16 * a.degree()).max(1024);
    let eps = EPS_ZERO * a.sup_on_grid(n).max(1.0);
    periodic_sign_changes(n, eps, 1e-15, |t| a.eval(t)).len()
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GammaSet {
    pub range: (f64, f64),
    /// Isolated parallel distances with a non-generic singular point.
    pub points: Vec<f64>,
    /// `φ_δ` vanishes identically for every δ: the whole range is degenerate.
    pub whole_range: bool,
}

/// Values `A = a − (b/μ1)′` and `R = (μ2/μ1)′` with derivatives, so that
/// `φ_δ = A − δR` is the swallowtail function of the parallel front at δ.
#[derive(Debug, Clone, Copy)]
struct GammaLocal {
    a: f64,
    a1: f64,
    r: f64,
    r1: f64,
}

fn gamma_local(q: &Quadruple, t: f64) -> GammaLocal {
    let l = q.local(t);
    let (_, q1, q2) = quotient_derivatives(&l);
    let m = l.mu1;
    let r0 = l.mu2[0] / m[0];
    let r1 = (l.mu2[1] - r0 * m[1]) / m[0];
    let r2 = (l.mu2[2] - 2.0 * r1 * m[1] - r0 * m[2]) / m[0];
    GammaLocal { a: l.a[0] - q1, a1: l.a[1] - q2, r: r1, r1: r2 }
}

fn cyclic_sign_changes(vals: impl Iterator<Item = f64>, eps: f64) -> usize {
    let mut first: Option<bool> = None;
    let mut last: Option<bool> = None;
    let mut count = 0;
    for v in vals {
        if v.abs() <= eps {
            continue;
        }
        let s = v > 0.0;
        if let Some(p) = last {
            if p != s {
                count += 1;
            }
        } else {
            first = Some(s);
        }
        last = Some(s);
    }
    if let (Some(f), Some(l)) = (first, last) {
        if f != l {
            count += 1;
        }
    }
    count
}

/// Parallel distances `δ` in `range` for which `φ_δ = a − ((b + δμ2)/μ1)′`
/// and `φ_δ′` have a common zero, i.e. the parallel front has a singular
/// point that is neither a cuspidal edge nor a swallowtail.
///
/// The number of zeros of `φ_δ` is scanned on a `(δ, t)` grid; where it
/// changes, `δ` is bisected and then refined as a critical value of
/// `δ(t) = A/R`.
pub fn gamma_set(q: &Quadruple, range: (f64, f64), resolution: (usize, usize)) -> Result<GammaSet> {
    let (lo, hi) = range;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidParameter { name: "range", reason: "need finite lo < hi" });
    }
    let (nd, nt) = resolution;
    if nd < 2 || nt < 8 {
        return Err(Error::InvalidParameter { name: "resolution", reason: "too coarse" });
    }
    let eps = q.eps_zero();
    let ts: Vec<f64> = grid(nt).collect();
    for &t in &ts {
        if q.mu1(t).abs() <= eps {
            return Err(Error::LinearSingularityPresent { t });
        }
    }
    let gl: Vec<GammaLocal> = ts.iter().map(|&t| gamma_local(q, t)).collect();
    let a_max = gl.iter().fold(0.0_f64, |m, g| m.max(g.a.abs()));
    let r_max = gl.iter().fold(0.0_f64, |m, g| m.max(g.r.abs()));
    if a_max <= eps && r_max <= eps {
        return Ok(GammaSet { range, points: Vec::new(), whole_range: true });
    }
    let count = |d: f64| cyclic_sign_changes(gl.iter().map(|g| g.a - d * g.r), eps);
    let step = (hi - lo) / (nd - 1) as f64;
    let tol = 1e-12 * (hi - lo).max(1.0);
    let mut points = Vec::new();
    let mut d0 = lo;
    let mut c0 = count(d0);
    for i in 1..nd {
        let d1 = lo + i as f64 * step;
        let c1 = count(d1);
        if c1 != c0 {
            let (mut l, mut h) = (d0, d1);
            while h - l > tol {
                let m = 0.5 * (l + h);
                if count(m) == c0 {
                    l = m;
                } else {
                    h = m;
                }
            }
            let est = 0.5 * (l + h);
            points.push(refine_gamma(q, &ts, &gl, l, h, eps).unwrap_or(est));
        }
        d0 = d1;
        c0 = c1;
    }
    points.retain(|d| *d >= lo && *d <= hi);
    points.sort_by(|a, b| a.total_cmp(b));
    points.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    Ok(GammaSet { range, points, whole_range: false })
}

/// Locates the grid cell where the zero pattern of `φ_δ` changes between
/// `dl` and `dh` and returns the nearby critical value of `A/R`.
fn refine_gamma(q: &Quadruple, ts: &[f64], gl: &[GammaLocal], dl: f64, dh: f64, eps: f64) -> Option<f64> {
    let n = ts.len();
    let h = TAU / n as f64;
    let sgn = |d: f64, i: usize| {
        let v = gl[i].a - d * gl[i].r;
        if v.abs() <= eps {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    };
    let idx = (0..n).find(|&i| sgn(dl, i) != sgn(dh, i))?;
    // ψ = A′R − AR′ vanishes at critical points of A/R
    let psi = |t: f64| {
        let g = gamma_local(q, t);
        g.a1 * g.r - g.a * g.r1
    };
    let center = ts[idx];
    let sub = 64;
    let span = 3.0 * h;
    let mut best: Option<(f64, f64)> = None;
    let mut prev_t = center - span;
    let mut prev = psi(prev_t);
    for k in 1..=sub {
        let t = center - span + 2.0 * span * k as f64 / sub as f64;
        let v = psi(t);
        if (v > 0.0) != (prev > 0.0) {
            let root = bisect(prev_t, t, 1e-15, psi);
            let g = gamma_local(q, root);
            let d = if g.r.abs() > eps { g.a / g.r } else { g.a1 / g.r1 };
            let dist = (d - 0.5 * (dl + dh)).abs();
            if best.is_none() || best.is_some_and(|(_, bd)| dist < bd) {
                best = Some((d, dist));
            }
        }
        prev_t = t;
        prev = v;
    }
    // accept only refinements consistent with the scan bracket
    let mid = 0.5 * (dl + dh);
    best.filter(|&(_, dist)| dist < 1e-2 * (1.0 + mid.abs())).map(|(d, _)| d)
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;
    use crate::curves::{dual_curve, SphericalCurve};
    use crate::math::PI;
    use crate::series::{latitude_circle, Trig};

    fn circle_cos_n(n: usize) -> Quadruple {
        let xi = SphericalCurve::latitude(PI / 4.0);
        let nu = dual_curve(&xi).unwrap().curve;
        Quadruple::new(Trig::harmonic(n, 1.0, 0.0), TrigSeries::zero(), xi, nu)
    }

    fn cone() -> Quadruple {
        let mut q = circle_cos_n(2);
        q.alpha = TrigSeries::zero();
        q
    }

    #[test]
    fn cos2_locus_is_generator() {
        let r = singular_locus(&circle_cos_n(2), 256).unwrap();
        assert!(r.samples.iter().all(|s| s.v.abs() < 1e-14));
        assert_eq!(r.counts.total(), r.samples.len());
        assert!(r.cone_point.is_none());
    }

    #[test]
    fn cone_locus_collapses() {
        let r = singular_locus(&cone(), 256).unwrap();
        let p = r.cone_point.unwrap();
        assert!(p.norm() < 1e-12);
        assert_eq!(r.counts.degenerate, r.samples.len());
        assert_eq!(r.noncusp_count, 1);
        assert!(r.noncusp_intervals);
    }

    #[test]
    fn plane_locus_is_empty() {
        let q = Quadruple::new(
            TrigSeries::zero(),
            TrigSeries::constant(1.0),
            SphericalCurve::constant(Vec3::E1).unwrap(),
            SphericalCurve::constant(Vec3::E3).unwrap(),
        );
        let r = singular_locus(&q, 128).unwrap();
        assert!(r.samples.is_empty());
        assert!(matches!(noncusp_count(&q), Err(Error::EmptySingularLocus)));
    }

    #[test]
    fn classify_examples() {
        let q = circle_cos_n(2);
        assert_eq!(classify_singular(&q, 0.0, None).unwrap().class, SingularClass::CuspidalEdge);
        let s = classify_singular(&q, PI / 4.0, None).unwrap();
        assert_eq!(s.class, SingularClass::Swallowtail);
        assert!((s.a_prime + 2.0).abs() < 1e-12);
        assert_eq!(classify_singular(&cone(), 1.0, None).unwrap().class, SingularClass::Degenerate);
        assert!(matches!(classify_singular(&q, 0.0, Some(1.0)), Err(Error::NotOnSingularLocus { .. })));
    }

    #[test]
    fn swallowtails_of_cos2_front() {
        let r = singular_locus(&circle_cos_n(2), 2048).unwrap();
        let sw: std::vec::Vec<f64> =
            r.samples.iter().filter(|s| s.class == SingularClass::Swallowtail).map(|s| s.t).collect();
        assert_eq!(sw.len(), 4);
        for (k, t) in sw.iter().enumerate() {
            assert!((t - (2 * k + 1) as f64 * PI / 4.0).abs() < 1e-6);
        }
        assert_eq!(r.counts.cuspidal_edge + 4, r.samples.len());
        assert_eq!(r.noncusp_count, 4);
    }

    #[test]
    fn off_grid_swallowtails_are_found() {
        let r = singular_locus(&circle_cos_n(3), 200).unwrap();
        assert_eq!(r.counts.swallowtail, 6);
        assert_eq!(r.noncusp_count, 6);
        assert_eq!(noncusp_count(&circle_cos_n(3)).unwrap(), 6);
    }

    #[test]
    fn sign_change_examples() {
        assert_eq!(sign_changes(&Trig::harmonic(2, 1.0, 0.0)), 4);
        assert_eq!(sign_changes(&Trig::harmonic(1, 1.0, 0.0)), 2);
        assert_eq!(sign_changes(&TrigSeries::zero()), 0);
    }

    #[test]
    fn gamma_set_examples() {
        let g = gamma_set(&circle_cos_n(2), (-10.0, 10.0), (64, 256)).unwrap();
        assert!(g.points.is_empty() && !g.whole_range);
        let g = gamma_set(&cone(), (-10.0, 10.0), (64, 256)).unwrap();
        assert!(g.whole_range);
    }

    #[test]
    fn gamma_set_refuses_linear() {
        let q = Quadruple::new(
            TrigSeries::zero(),
            TrigSeries::constant(1.0),
            SphericalCurve::constant(Vec3::E1).unwrap(),
            SphericalCurve::constant(Vec3::E3).unwrap(),
        );
        assert!(matches!(gamma_set(&q, (0.0, 1.0), (8, 64)), Err(Error::LinearSingularityPresent { .. })));
    }

    #[test]
    fn gamma_points_are_critical_values() {
        let raw = latitude_circle(PI / 4.0) + Trig::harmonic(3, Vec3::E3 * 0.05, Vec3::ZERO);
        let xi = SphericalCurve::new(raw).unwrap();
        let q = Quadruple::with_dual(Trig::harmonic(2, 1.0, 0.0), TrigSeries::zero(), xi).unwrap();
        let g = gamma_set(&q, (-10.0, 10.0), (128, 512)).unwrap();
        assert!(!g.points.is_empty());
        for &d in &g.points {
            // φ_δ and φ_δ′ have a common zero
            let best = (0..20000)
                .map(|i| {
                    let gl = gamma_local(&q, TAU * i as f64 / 20000.0);
                    (gl.a - d * gl.r).abs() + (gl.a1 - d * gl.r1).abs()
                })
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-3, "δ = {d}: residual {best}");
        }
    }
}
