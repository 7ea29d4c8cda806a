//! Truncated trigonometric series on the circle `ℝ/2πℤ`.
//!
//! A series is stored as a constant term plus cosine and sine coefficients
//! for frequencies `1..=K`. Coefficients are either scalars
//! ([`TrigSeries`]) or vectors in 3-space ([`TrigCurve3`]). Derivatives and
//! primitives act term-wise; products are formed exactly by the
//! product-to-sum identities, so the degree of a product is the sum of the
//! degrees. Arbitrary smooth periodic functions enter through
//! [`Trig::fit`], a discrete Fourier projection on a uniform grid.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::math::{cos, grid, sin, sin_cos};
use crate::vec3::Vec3;

/// Highest derivative order carried by [`Trig::jet`].
pub const MAX_JET: usize = 4;

/// Coefficient types a series can carry.
pub trait Coef:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> + Mul<f64, Output = Self>
{
    fn max_abs(self) -> f64;
}

impl Coef for f64 {
    fn max_abs(self) -> f64 {
        self.abs()
    }
}

impl Coef for Vec3 {
    fn max_abs(self) -> f64 {
        Vec3::max_abs(self)
    }
}

/// `c + Σ_k (cos_k cos kt + sin_k sin kt)`, 2π-periodic.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Trig<C> {
    pub constant: C,
    pub cos: Vec<C>,
    pub sin: Vec<C>,
}

/// Real-valued periodic function (the densities `a`, `b` of a quadruple).
pub type TrigSeries = Trig<f64>;
/// Closed curve in ℝ³.
pub type TrigCurve3 = Trig<Vec3>;

impl<C: Coef> Default for Trig<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coef> Trig<C> {
    pub fn zero() -> Self {
        Trig { constant: C::default(), cos: Vec::new(), sin: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Trig { constant: c, cos: Vec::new(), sin: Vec::new() }
    }

    /// Builds a series; the shorter of `cos`/`sin` is padded with zeros.
    pub fn new(constant: C, mut cos: Vec<C>, mut sin: Vec<C>) -> Self {
        let k = cos.len().max(sin.len());
        cos.resize(k, C::default());
        sin.resize(k, C::default());
        Trig { constant, cos, sin }
    }

    /// A single harmonic `c cos kt + s sin kt` (or the constant when `k == 0`).
    pub fn harmonic(k: usize, c: C, s: C) -> Self {
        if k == 0 {
            return Self::constant(c);
        }
        let mut cos = vec![C::default(); k];
        let mut sin = vec![C::default(); k];
        cos[k - 1] = c;
        sin[k - 1] = s;
        Trig { constant: C::default(), cos, sin }
    }

    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    /// Mean value over one period.
    pub fn mean(&self) -> C {
        self.constant
    }

    pub fn eval(&self, t: f64) -> C {
        self.jet(t, 0)[0]
    }

    pub fn eval_derivative(&self, t: f64, order: usize) -> C {
        if order <= MAX_JET {
            return self.jet(t, order)[order];
        }
        self.derivative(order).eval(t)
    }

    /// Value and derivatives up to `order` (at most [`MAX_JET`]).
    pub fn jet(&self, t: f64, order: usize) -> [C; MAX_JET + 1] {
        let order = order.min(MAX_JET);
        let mut out = [C::default(); MAX_JET + 1];
        out[0] = self.constant;
        let (s1, c1) = sin_cos(t);
        let (mut sk, mut ck) = (s1, c1);
        for (i, (&a, &b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let k = (i + 1) as f64;
            if i > 0 && i % 64 == 0 {
                // resynchronise the recurrence
                let (s, c) = sin_cos(k * t);
                sk = s;
                ck = c;
            }
            // derivative m of a cos kt + b sin kt is k^m (a cos(kt+mπ/2) + b sin(kt+mπ/2))
            let mut km = 1.0;
            for (m, slot) in out.iter_mut().enumerate().take(order + 1) {
                let term = match m % 4 {
                    0 => a * ck + b * sk,
                    1 => b * ck - a * sk,
                    2 => -(a * ck) - b * sk,
                    _ => a * sk - b * ck,
                };
                *slot = *slot + term * km;
                km *= k;
            }
            let next_c = ck * c1 - sk * s1;
            let next_s = sk * c1 + ck * s1;
            ck = next_c;
            sk = next_s;
        }
        out
    }

    /// Term-wise derivative of the given order.
    pub fn derivative(&self, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        let mut cos = Vec::with_capacity(self.degree());
        let mut sin = Vec::with_capacity(self.degree());
        for (i, (&a, &b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let km = powi((i + 1) as f64, order);
            let (na, nb) = match order % 4 {
                0 => (a, b),
                1 => (b, -a),
                2 => (-a, -b),
                _ => (-b, a),
            };
            cos.push(na * km);
            sin.push(nb * km);
        }
        Trig { constant: C::default(), cos, sin }
    }

    /// Primitive of the non-constant part, normalised to vanish at `t = 0`.
    ///
    /// The full primitive is `mean()·t + primitive_periodic()(t)`.
    pub fn primitive_periodic(&self) -> Self {
        let mut cos = Vec::with_capacity(self.degree());
        let mut sin = Vec::with_capacity(self.degree());
        let mut constant = C::default();
        for (i, (&a, &b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let k = (i + 1) as f64;
            // ∫ a cos kt + b sin kt = (a/k) sin kt − (b/k) cos kt
            cos.push(-b * (1.0 / k));
            sin.push(a * (1.0 / k));
            constant = constant + b * (1.0 / k);
        }
        Trig { constant, cos, sin }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|c| c * s)
    }

    pub fn map<D: Coef>(&self, f: impl Fn(C) -> D) -> Trig<D> {
        Trig {
            constant: f(self.constant),
            cos: self.cos.iter().map(|&c| f(c)).collect(),
            sin: self.sin.iter().map(|&c| f(c)).collect(),
        }
    }

    /// Largest coefficient magnitude.
    pub fn max_coef(&self) -> f64 {
        self.cos.iter().chain(&self.sin).fold(self.constant.max_abs(), |m, c| m.max(c.max_abs()))
    }

    /// Sup-norm of the coefficient difference against another series.
    pub fn coef_distance(&self, other: &Self) -> f64 {
        (self.clone() - other.clone()).max_coef()
    }

    /// Drops trailing harmonics whose coefficients are below `tol`.
    pub fn trimmed(mut self, tol: f64) -> Self {
        while let (Some(a), Some(b)) = (self.cos.last(), self.sin.last()) {
            if a.max_abs() <= tol && b.max_abs() <= tol {
                self.cos.pop();
                self.sin.pop();
            } else {
                break;
            }
        }
        self
    }

    /// Discrete Fourier projection of `f` sampled on the `n`-point grid.
    ///
    /// For even `n` the Nyquist cosine is kept with half weight, so the
    /// returned series interpolates `f` exactly at the grid points. Trailing
    /// harmonics at round-off level are trimmed.
    pub fn fit(n: usize, f: impl Fn(f64) -> C) -> Self {
        assert!(n >= 2, "fit needs at least two samples");
        let samples: Vec<C> = grid(n).map(&f).collect();
        Self::from_samples(&samples)
    }

    /// As [`Trig::fit`], from precomputed samples on the uniform grid.
    pub fn from_samples(samples: &[C]) -> Self {
        let n = samples.len();
        let table: Vec<(f64, f64)> = grid(n).map(|t| (cos(t), sin(t))).collect();
        let mut constant = C::default();
        for &s in samples {
            constant = constant + s;
        }
        constant = constant * (1.0 / n as f64);
        let kmax = n / 2;
        let mut cos_c = Vec::with_capacity(kmax);
        let mut sin_c = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            let mut a = C::default();
            let mut b = C::default();
            for (j, &s) in samples.iter().enumerate() {
                let (c, sn) = table[(j * k) % n];
                a = a + s * c;
                b = b + s * sn;
            }
            let w = if 2 * k == n { 1.0 / n as f64 } else { 2.0 / n as f64 };
            cos_c.push(a * w);
            sin_c.push(if 2 * k == n { C::default() } else { b * w });
        }
        let mut scale = constant.max_abs();
        for c in cos_c.iter().chain(&sin_c) {
            scale = scale.max(c.max_abs());
        }
        Trig { constant, cos: cos_c, sin: sin_c }.trimmed(scale * 1e-17)
    }

    /// Sup-norm of the series over an `n`-point grid.
    pub fn sup_on_grid(&self, n: usize) -> f64 {
        grid(n).map(|t| self.eval(t).max_abs()).fold(0.0, f64::max)
    }

    /// Exact product under a bilinear coefficient operation.
    pub fn product<D: Coef, E: Coef>(&self, other: &Trig<D>, op: impl Fn(C, D) -> E) -> Trig<E> {
        let deg = self.degree() + other.degree();
        let mut out = Trig { constant: E::default(), cos: vec![E::default(); deg], sin: vec![E::default(); deg] };
        let lhs = terms(self);
        let rhs = terms(other);
        for &(ka, ca, sa) in &lhs {
            for &(kb, cb, sb) in &rhs {
                let (i, j) = (ka as isize, kb as isize);
                // cos i cos j = ½[cos(i−j) + cos(i+j)]
                let v = op(ca, cb) * 0.5;
                add_cos(&mut out, i - j, v);
                add_cos(&mut out, i + j, v);
                // sin i sin j = ½[cos(i−j) − cos(i+j)]
                let v = op(sa, sb) * 0.5;
                add_cos(&mut out, i - j, v);
                add_cos(&mut out, i + j, -v);
                // cos i sin j = ½[sin(i+j) − sin(i−j)]
                let v = op(ca, sb) * 0.5;
                add_sin(&mut out, i + j, v);
                add_sin(&mut out, i - j, -v);
                // sin i cos j = ½[sin(i+j) + sin(i−j)]
                let v = op(sa, cb) * 0.5;
                add_sin(&mut out, i + j, v);
                add_sin(&mut out, i - j, v);
            }
        }
        out.trimmed(0.0)
    }
}

impl TrigSeries {
    /// Pointwise product of two scalar series.
    pub fn mul_series(&self, other: &TrigSeries) -> TrigSeries {
        self.product(other, |a, b| a * b)
    }

    /// Scalar series times a vector series.
    pub fn mul_curve(&self, other: &TrigCurve3) -> TrigCurve3 {
        self.product(other, |a, b| b * a)
    }
}

impl TrigCurve3 {
    pub fn dot(&self, other: &TrigCurve3) -> TrigSeries {
        self.product(other, Vec3::dot)
    }

    pub fn cross(&self, other: &TrigCurve3) -> TrigCurve3 {
        self.product(other, Vec3::cross)
    }

    /// The `i`-th coordinate function.
    pub fn component(&self, i: usize) -> TrigSeries {
        self.map(|v| v[i])
    }

    pub fn from_components(x: &TrigSeries, y: &TrigSeries, z: &TrigSeries) -> TrigCurve3 {
        let k = x.degree().max(y.degree()).max(z.degree());
        let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        let cos = (0..k).map(|i| Vec3::new(at(&x.cos, i), at(&y.cos, i), at(&z.cos, i))).collect();
        let sin = (0..k).map(|i| Vec3::new(at(&x.sin, i), at(&y.sin, i), at(&z.sin, i))).collect();
        Trig { constant: Vec3::new(x.constant, y.constant, z.constant), cos, sin }
    }
}

impl<C: Coef> Add for Trig<C> {
    type Output = Trig<C>;
    fn add(self, o: Trig<C>) -> Trig<C> {
        let k = self.degree().max(o.degree());
        let get = |v: &Vec<C>, i: usize| v.get(i).copied().unwrap_or_default();
        Trig {
            constant: self.constant + o.constant,
            cos: (0..k).map(|i| get(&self.cos, i) + get(&o.cos, i)).collect(),
            sin: (0..k).map(|i| get(&self.sin, i) + get(&o.sin, i)).collect(),
        }
    }
}

impl<C: Coef> Sub for Trig<C> {
    type Output = Trig<C>;
    fn sub(self, o: Trig<C>) -> Trig<C> {
        self + o.scale(-1.0)
    }
}

impl<C: Coef> Neg for Trig<C> {
    type Output = Trig<C>;
    fn neg(self) -> Trig<C> {
        self.scale(-1.0)
    }
}

fn powi(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * x)
}

/// Terms as `(k, cos coefficient, sin coefficient)`, the constant as `k = 0`.
fn terms<C: Coef>(s: &Trig<C>) -> Vec<(usize, C, C)> {
    let mut out = Vec::with_capacity(s.degree() + 1);
    out.push((0, s.constant, C::default()));
    for (i, (&a, &b)) in s.cos.iter().zip(&s.sin).enumerate() {
        out.push((i + 1, a, b));
    }
    out
}

fn add_cos<E: Coef>(out: &mut Trig<E>, k: isize, v: E) {
    let k = k.unsigned_abs();
    if k == 0 {
        out.constant = out.constant + v;
    } else {
        out.cos[k - 1] = out.cos[k - 1] + v;
    }
}

fn add_sin<E: Coef>(out: &mut Trig<E>, k: isize, v: E) {
    match k {
        0 => {}
        k if k < 0 => {
            let i = (-k) as usize - 1;
            out.sin[i] = out.sin[i] - v;
        }
        k => {
            let i = k as usize - 1;
            out.sin[i] = out.sin[i] + v;
        }
    }
}

/// The latitude circle `(cos t cos φ, sin t cos φ, sin φ)`.
pub fn latitude_circle(phi: f64) -> TrigCurve3 {
    let (s, c) = sin_cos(phi);
    Trig::new(Vec3::new(0.0, 0.0, s), vec![Vec3::new(c, 0.0, 0.0)], vec![Vec3::new(0.0, c, 0.0)])
}
