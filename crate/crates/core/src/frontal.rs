//! Quadruple data `(α = a dt, β = b dt, ξ̂, ν̂)` and the developable front it
//! generates, `f(t, v) = σ̂(t) + v ξ̂(t)` with `σ̂′ = a ξ̂ + b η̂`,
//! `η̂ = ξ̂ × ν̂`.

use alloc::vec::Vec;

use crate::curves::{dual_curve, SphericalCurve, EPS_ZERO};
use crate::error::{Error, Result};
use crate::math::{binomial, grid, periodic_trapezoid, PI, TAU};
use crate::series::{TrigCurve3, TrigSeries};
use crate::vec3::{solve3, Vec3};

/// Tolerance for the duality relations in [`validate_quadruple`].
pub const DUALITY_TOL: f64 = 1e-9;
/// Period defect norm above which a front is flagged as not closed.
pub const PERIOD_DEFECT_TOL: f64 = 1e-8;
/// Sup-norm tolerance for the π-periodicity tests.
pub const PARITY_TOL: f64 = 1e-8;
/// Largest accepted condition number of the Gram matrix.
pub const GRAM_CONDITION_MAX: f64 = 1e8;

/// Generating data of a developable frontal.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadruple {
    pub alpha: TrigSeries,
    pub beta: TrigSeries,
    pub xi: SphericalCurve,
    pub nu: SphericalCurve,
}

/// Pointwise data of a quadruple: the frame and the derivatives needed by
/// the singularity criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Local {
    pub t: f64,
    pub xi: Vec3,
    pub nu: Vec3,
    pub eta: Vec3,
    pub xi_prime: Vec3,
    pub nu_prime: Vec3,
    /// `a, a′, a″`
    pub a: [f64; 3],
    /// `b, b′, b″`
    pub b: [f64; 3],
    /// `μ1, μ1′, μ1″`
    pub mu1: [f64; 3],
    /// `μ2, μ2′, μ2″`
    pub mu2: [f64; 3],
}

impl Quadruple {
    pub fn new(alpha: TrigSeries, beta: TrigSeries, xi: SphericalCurve, nu: SphericalCurve) -> Self {
        Quadruple { alpha, beta, xi, nu }
    }

    /// Uses the dual of `ξ̂` as `ν̂`.
    pub fn with_dual(alpha: TrigSeries, beta: TrigSeries, xi: SphericalCurve) -> Result<Self> {
        let nu = dual_curve(&xi)?.curve;
        Ok(Quadruple { alpha, beta, xi, nu })
    }

    /// Sample count used by grid scans and projections.
    pub fn grid(&self) -> usize {
        self.xi.grid()
    }

    pub fn with_grid(mut self, n: usize) -> Self {
        self.xi = self.xi.with_grid(n);
        self.nu = self.nu.with_grid(n);
        self
    }

    /// `(α, β, −ξ̂, −ν̂)`, which generates a congruent frontal.
    pub fn antipodal(&self) -> Self {
        Quadruple {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            xi: self.xi.antipodal(),
            nu: self.nu.antipodal(),
        }
    }

    pub fn eta(&self, t: f64) -> Vec3 {
        self.xi.eval(t).cross(self.nu.eval(t))
    }

    pub fn mu1(&self, t: f64) -> f64 {
        let x = self.xi.jet(t, 1);
        x[1].dot(x[0].cross(self.nu.eval(t)))
    }

    pub fn mu2(&self, t: f64) -> f64 {
        let n = self.nu.jet(t, 1);
        n[1].dot(self.xi.eval(t).cross(n[0]))
    }

    pub fn local(&self, t: f64) -> Local {
        let x = self.xi.jet(t, 3);
        let n = self.nu.jet(t, 3);
        let mut eta = [Vec3::ZERO; 3];
        for (k, e) in eta.iter_mut().enumerate() {
            for i in 0..=k {
                *e += x[i].cross(n[k - i]) * binomial(k, i);
            }
        }
        let mut mu1 = [0.0; 3];
        let mut mu2 = [0.0; 3];
        for k in 0..3 {
            for i in 0..=k {
                let w = binomial(k, i);
                mu1[k] += w * x[i + 1].dot(eta[k - i]);
                mu2[k] += w * n[i + 1].dot(eta[k - i]);
            }
        }
        let aj = self.alpha.jet(t, 2);
        let bj = self.beta.jet(t, 2);
        Local {
            t,
            xi: x[0],
            nu: n[0],
            eta: eta[0],
            xi_prime: x[1],
            nu_prime: n[1],
            a: [aj[0], aj[1], aj[2]],
            b: [bj[0], bj[1], bj[2]],
            mu1,
            mu2,
        }
    }

    /// Magnitude scale for the zero threshold: the largest of `1`, `‖ξ̂′‖`,
    /// `‖ν̂′‖`, `|a|` and `|b|` on the grid.
    pub fn scale(&self) -> f64 {
        grid(self.grid()).fold(1.0_f64, |m, t| {
            let l = self.local_first_order(t);
            m.max(l.0).max(l.1).max(l.2).max(l.3)
        })
    }

    fn local_first_order(&self, t: f64) -> (f64, f64, f64, f64) {
        (self.xi.jet(t, 1)[1].norm(), self.nu.jet(t, 1)[1].norm(), self.alpha.eval(t).abs(), self.beta.eval(t).abs())
    }

    /// `ε_zero` scaled by [`Quadruple::scale`].
    pub fn eps_zero(&self) -> f64 {
        EPS_ZERO * self.scale()
    }

    /// Samples of `a ξ̂ + b η̂` on the grid.
    fn integrand_samples(&self) -> Vec<Vec3> {
        grid(self.grid()).map(|t| self.xi.eval(t) * self.alpha.eval(t) + self.eta(t) * self.beta.eval(t)).collect()
    }
}

/// Sup-norm residuals of the duality relations.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualityResiduals {
    pub nu_dot_xi: f64,
    pub nu_prime_dot_xi: f64,
    pub nu_dot_xi_prime: f64,
    pub xi_frame: f64,
    pub nu_frame: f64,
}

impl DualityResiduals {
    pub fn max(&self) -> f64 {
        self.nu_dot_xi.max(self.nu_prime_dot_xi).max(self.nu_dot_xi_prime).max(self.xi_frame).max(self.nu_frame)
    }

    pub fn passes(&self) -> bool {
        self.max() < DUALITY_TOL
    }

    fn worst(&self) -> (&'static str, f64) {
        [
            ("nu.xi", self.nu_dot_xi),
            ("nu'.xi", self.nu_prime_dot_xi),
            ("nu.xi'", self.nu_dot_xi_prime),
            ("xi' - mu1 eta", self.xi_frame),
            ("nu' - mu2 eta", self.nu_frame),
        ]
        .into_iter()
        .fold(("nu.xi", f64::NEG_INFINITY), |acc, r| if r.1 > acc.1 { r } else { acc })
    }
}

/// Residuals of the duality relations on the grid (never fails).
pub fn duality_residuals(q: &Quadruple) -> DualityResiduals {
    let mut r =
        DualityResiduals { nu_dot_xi: 0.0, nu_prime_dot_xi: 0.0, nu_dot_xi_prime: 0.0, xi_frame: 0.0, nu_frame: 0.0 };
    for t in grid(q.grid()) {
        let x = q.xi.jet(t, 1);
        let n = q.nu.jet(t, 1);
        let eta = x[0].cross(n[0]);
        let mu1 = x[1].dot(eta);
        let mu2 = n[1].dot(eta);
        r.nu_dot_xi = r.nu_dot_xi.max(n[0].dot(x[0]).abs());
        r.nu_prime_dot_xi = r.nu_prime_dot_xi.max(n[1].dot(x[0]).abs());
        r.nu_dot_xi_prime = r.nu_dot_xi_prime.max(n[0].dot(x[1]).abs());
        r.xi_frame = r.xi_frame.max((x[1] - eta * mu1).norm());
        r.nu_frame = r.nu_frame.max((n[1] - eta * mu2).norm());
    }
    r
}

/// Checks the duality relations; fails with the worst offending residual.
pub fn validate_quadruple(q: &Quadruple) -> Result<DualityResiduals> {
    let r = duality_residuals(q);
    if r.passes() {
        Ok(r)
    } else {
        let (residual, value) = r.worst();
        Err(Error::DualityViolation { residual, value })
    }
}

/// `∫₀^{2π} (a ξ̂ + b η̂) dt` by the trapezoid rule on the grid.
pub fn period_residual(q: &Quadruple) -> Vec3 {
    sum_trapezoid(&q.integrand_samples())
}

fn sum_trapezoid(samples: &[Vec3]) -> Vec3 {
    let n = samples.len();
    Vec3::new(
        periodic_trapezoid(samples.iter().map(|v| v.x), n),
        periodic_trapezoid(samples.iter().map(|v| v.y), n),
        periodic_trapezoid(samples.iter().map(|v| v.z), n),
    )
}

/// Evaluator for `f(t, v) = σ̂(t) + v ξ̂(t)`.
#[derive(Debug, Clone)]
pub struct FrontEvaluator {
    quadruple: Quadruple,
    /// Primitive of the non-constant part of `a ξ̂ + b η̂`, `σ̂(0) = 0`.
    sigma_periodic: TrigCurve3,
    defect: Vec3,
}

impl FrontEvaluator {
    pub fn quadruple(&self) -> &Quadruple {
        &self.quadruple
    }

    /// `∫₀^{2π} (a ξ̂ + b η̂) dt`; zero for closed generators.
    pub fn period_defect(&self) -> Vec3 {
        self.defect
    }

    /// The generator does not close up; evaluation continues on the
    /// universal cover with the linear drift `defect·t/2π`.
    pub fn defect_warning(&self) -> bool {
        self.defect.norm() > PERIOD_DEFECT_TOL
    }

    pub fn sigma_series(&self) -> &TrigCurve3 {
        &self.sigma_periodic
    }

    pub fn sigma_hat(&self, t: f64) -> Vec3 {
        self.sigma_periodic.eval(t) + self.defect * (t / TAU)
    }

    pub fn sigma_hat_prime(&self, t: f64) -> Vec3 {
        self.sigma_periodic.eval_derivative(t, 1) + self.defect * (1.0 / TAU)
    }

    pub fn f(&self, t: f64, v: f64) -> Vec3 {
        self.sigma_hat(t) + self.quadruple.xi.eval(t) * v
    }

    pub fn f_t(&self, t: f64, v: f64) -> Vec3 {
        self.sigma_hat_prime(t) + self.quadruple.xi.jet(t, 1)[1] * v
    }

    pub fn f_v(&self, t: f64) -> Vec3 {
        self.quadruple.xi.eval(t)
    }

    /// Unit normal `ν̂(t)`, constant along the ruling.
    pub fn normal(&self, t: f64) -> Vec3 {
        self.quadruple.nu.eval(t)
    }

    /// `λ = b + v μ1` with `f_t × f_v = λ η̂ × ξ̂`.
    pub fn lambda(&self, t: f64, v: f64) -> f64 {
        self.quadruple.beta.eval(t) + v * self.quadruple.mu1(t)
    }
}

/// Builds the front of a valid quadruple.
///
/// The integrand `a ξ̂ + b η̂` is projected onto a trigonometric series on
/// the grid and integrated term-wise; its mean becomes the period defect.
pub fn build_front(q: &Quadruple) -> Result<FrontEvaluator> {
    validate_quadruple(q)?;
    let samples = q.integrand_samples();
    let defect = sum_trapezoid(&samples);
    let mut integrand = TrigCurve3::from_samples(&samples);
    integrand.constant = Vec3::ZERO;
    Ok(FrontEvaluator { quadruple: q.clone(), sigma_periodic: integrand.primitive_periodic(), defect })
}

/// Gram matrix `∫ ξ_i ξ_j dt` and right-hand side `∫ a ξ_i dt`.
fn gram(q_xi: &SphericalCurve, n: usize, weight: impl Fn(f64) -> f64) -> ([Vec3; 3], Vec3) {
    let mut g = [Vec3::ZERO; 3];
    let mut rhs = Vec3::ZERO;
    let h = TAU / n as f64;
    for t in grid(n) {
        let x = q_xi.eval(t);
        for (i, row) in g.iter_mut().enumerate() {
            *row += x * (x[i] * h);
        }
        rhs += x * (weight(t) * h);
    }
    (g, rhs)
}

/// Removes from `a_raw` its L² projection onto `span{ξ1, ξ2, ξ3}`, so that
/// `∫ a ξ̂ dt = 0`.
pub fn project_period(xi: &SphericalCurve, a_raw: &TrigSeries) -> Result<TrigSeries> {
    let n = xi.grid();
    let (g, rhs) = gram(xi, n, |t| a_raw.eval(t));
    let (c, condition) = solve3(g, rhs).ok_or(Error::DegenerateGram { condition: f64::INFINITY })?;
    if condition > GRAM_CONDITION_MAX {
        return Err(Error::DegenerateGram { condition });
    }
    Ok(TrigSeries::fit(n, |t| a_raw.eval(t) - c.dot(xi.eval(t))))
}

/// Joint correction of `(a, b)` so that `∫ (a ξ̂ + b η̂) dt = 0`: subtracts
/// `c·ξ̂` from `a` and `c·η̂` from `b` with `c` solving
/// `∫ (ξ̂ξ̂ᵀ + η̂η̂ᵀ) dt · c = ∫ (a ξ̂ + b η̂) dt`.
pub fn project_period_joint(q: &Quadruple) -> Result<(TrigSeries, TrigSeries)> {
    let n = q.grid();
    let h = TAU / n as f64;
    let mut g = [Vec3::ZERO; 3];
    for t in grid(n) {
        let x = q.xi.eval(t);
        let e = q.eta(t);
        for (i, row) in g.iter_mut().enumerate() {
            *row += (x * x[i] + e * e[i]) * h;
        }
    }
    let rhs = period_residual(q);
    let (c, condition) = solve3(g, rhs).ok_or(Error::DegenerateGram { condition: f64::INFINITY })?;
    if condition > GRAM_CONDITION_MAX {
        return Err(Error::DegenerateGram { condition });
    }
    let a = TrigSeries::fit(n, |t| q.alpha.eval(t) - c.dot(q.xi.eval(t)));
    let b = TrigSeries::fit(n, |t| q.beta.eval(t) - c.dot(q.eta(t)));
    Ok((a, b))
}

/// Front condition on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontCondition {
    pub t: Vec<f64>,
    pub front: Vec<bool>,
    /// All grid rulings satisfy the condition.
    pub is_front: bool,
    /// Rulings where `ν̂′ = 0` but the front condition holds (umbilic rulings).
    pub umbilic_rulings: Vec<f64>,
}

/// `f` is a front at `t` iff `ν̂′(t) ≠ 0`, or `ξ̂′(t) = ν̂′(t) = 0` and `b(t) ≠ 0`.
pub fn front_condition(q: &Quadruple) -> FrontCondition {
    let eps = q.eps_zero();
    let ts: Vec<f64> = grid(q.grid()).collect();
    let mut front = Vec::with_capacity(ts.len());
    let mut umbilic_rulings = Vec::new();
    for &t in &ts {
        let (xp, np, _, b) = q.local_first_order(t);
        let ok = np > eps || (xp <= eps && np <= eps && b > eps);
        if ok && np <= eps {
            umbilic_rulings.push(t);
        }
        front.push(ok);
    }
    let is_front = front.iter().all(|&f| f);
    FrontCondition { t: ts, front, is_front, umbilic_rulings }
}

/// The gauge change `(α + dφ, β + φ μ1 dt, ξ̂, ν̂)`, generating `f + φ ξ̂`.
pub fn regauge(q: &Quadruple, phi: &TrigSeries) -> Quadruple {
    let alpha = q.alpha.clone() + phi.derivative(1);
    let beta = TrigSeries::fit(q.grid(), |t| q.beta.eval(t) + phi.eval(t) * q.mu1(t));
    Quadruple { alpha, beta, xi: q.xi.clone(), nu: q.nu.clone() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Parity {
    /// `x(t + π) = x(t)`
    PiPeriodic,
    /// `x(t + π) = −x(t)`
    AntiPiPeriodic,
    /// Identically zero, hence both of the above.
    Vanishing,
    Neither,
}

impl Parity {
    pub fn is_periodic(self) -> bool {
        matches!(self, Parity::PiPeriodic | Parity::Vanishing)
    }

    pub fn is_anti(self) -> bool {
        matches!(self, Parity::AntiPiPeriodic | Parity::Vanishing)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParityResidual {
    pub parity: Parity,
    /// `sup |x(t + π) − x(t)|`
    pub periodic_residual: f64,
    /// `sup |x(t + π) + x(t)|`
    pub anti_residual: f64,
}

fn classify_parity<C: Copy + core::ops::Sub<Output = C> + core::ops::Add<Output = C>>(
    n: usize,
    f: impl Fn(f64) -> C,
    norm: impl Fn(C) -> f64,
) -> ParityResidual {
    let (mut per, mut anti): (f64, f64) = (0.0, 0.0);
    for t in grid(n) {
        let (x0, x1) = (f(t), f(t + PI));
        per = per.max(norm(x1 - x0));
        anti = anti.max(norm(x1 + x0));
    }
    let parity = match (per < PARITY_TOL, anti < PARITY_TOL) {
        (true, true) => Parity::Vanishing,
        (true, false) => Parity::PiPeriodic,
        (false, true) => Parity::AntiPiPeriodic,
        (false, false) => Parity::Neither,
    };
    ParityResidual { parity, periodic_residual: per, anti_residual: anti }
}

/// Half-period symmetry of the data and the covering structure it implies.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PeriodicityClass {
    pub xi: ParityResidual,
    pub nu: ParityResidual,
    pub a: ParityResidual,
    pub b: ParityResidual,
    /// `ξ̂` and `a` are anti-π-periodic: the front double-covers a
    /// non-orientable p-frontal.
    pub covers_nonorientable: bool,
    /// `ν̂` is anti-π-periodic: the front double-covers a non-co-orientable
    /// p-frontal.
    pub covers_noncoorientable: bool,
    /// No covering structure.
    pub plain: bool,
    /// Orientability of the quotient; `None` when there is no quotient or
    /// the data match neither sub-case.
    pub quotient_orientable: Option<bool>,
    pub quotient_coorientable: Option<bool>,
}

pub fn periodicity_class(q: &Quadruple) -> PeriodicityClass {
    let n = q.grid();
    let vnorm = |v: Vec3| v.norm();
    let xi = classify_parity(n, |t| q.xi.eval(t), vnorm);
    let nu = classify_parity(n, |t| q.nu.eval(t), vnorm);
    let a = classify_parity(n, |t| q.alpha.eval(t), f64::abs);
    let b = classify_parity(n, |t| q.beta.eval(t), f64::abs);
    let covers_nonorientable = xi.parity.is_anti() && a.parity.is_anti();
    let covers_noncoorientable = nu.parity.is_anti();
    let xi_a_periodic = xi.parity.is_periodic() && a.parity.is_periodic();
    let xi_a_anti = xi.parity.is_anti() && a.parity.is_anti();

    let quotient_coorientable = if covers_nonorientable {
        if nu.parity.is_periodic() && b.parity.is_anti() {
            Some(true)
        } else if nu.parity.is_anti() && b.parity.is_periodic() {
            Some(false)
        } else {
            None
        }
    } else if covers_noncoorientable {
        Some(false)
    } else {
        None
    };
    let quotient_orientable = if covers_noncoorientable {
        if xi_a_periodic && b.parity.is_anti() {
            Some(true)
        } else if xi_a_anti && b.parity.is_periodic() {
            Some(false)
        } else {
            None
        }
    } else if covers_nonorientable {
        Some(false)
    } else {
        None
    };
    PeriodicityClass {
        xi,
        nu,
        a,
        b,
        covers_nonorientable,
        covers_noncoorientable,
        plain: !covers_nonorientable && !covers_noncoorientable,
        quotient_orientable,
        quotient_coorientable,
    }
}
