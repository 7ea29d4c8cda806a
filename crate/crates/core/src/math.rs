//! Scalar helpers that work without `std`.

pub use core::f64::consts::{FRAC_PI_2, PI, TAU};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn sin_cos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}

#[inline]
pub fn atan(x: f64) -> f64 {
    libm::atan(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn acos(x: f64) -> f64 {
    libm::acos(x.clamp(-1.0, 1.0))
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// Reduces an angle to `[0, 2π)`.
#[inline]
pub fn wrap_angle(t: f64) -> f64 {
    let r = t - TAU * floor(t / TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Uniform grid `2πi/n`, `i = 0..n`.
pub fn grid(n: usize) -> impl Iterator<Item = f64> + Clone {
    let h = TAU / n as f64;
    (0..n).map(move |i| i as f64 * h)
}

/// Periodic trapezoid rule over one period for samples on [`grid`].
pub fn periodic_trapezoid(samples: impl IntoIterator<Item = f64>, n: usize) -> f64 {
    let sum: f64 = samples.into_iter().sum();
    sum * TAU / n as f64
}

/// Bisection on a bracketed sign change of `f` in `[lo, hi]`.
pub fn bisect(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of a 2π-periodic function located by sign changes on the
/// `n`-point grid and refined by bisection to `tol`.
///
/// Samples with `|f| <= eps` are treated as zero; a run of such samples
/// between two opposite signs yields a single crossing. Roots are returned
/// in `[0, 2π)`, sorted. The count is always even.
pub fn periodic_sign_changes(n: usize, eps: f64, tol: f64, f: impl Fn(f64) -> f64) -> alloc::vec::Vec<f64> {
    let h = TAU / n as f64;
    let nonzero: alloc::vec::Vec<(usize, f64)> =
        (0..n).map(|i| (i, f(i as f64 * h))).filter(|(_, v)| v.abs() > eps).collect();
    let mut roots = alloc::vec::Vec::new();
    if nonzero.len() < 2 {
        return roots;
    }
    for w in 0..nonzero.len() {
        let (i, vi) = nonzero[w];
        let (j, vj) = nonzero[(w + 1) % nonzero.len()];
        if (vi > 0.0) == (vj > 0.0) {
            continue;
        }
        let lo = i as f64 * h;
        let mut hi = j as f64 * h;
        if j <= i {
            hi += TAU;
        }
        roots.push(wrap_angle(bisect(lo, hi, tol, &f)));
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_stays_in_range() {
        assert_eq!(wrap_angle(0.0), 0.0);
        assert!((wrap_angle(-0.5) - (TAU - 0.5)).abs() < 1e-15);
        assert!((wrap_angle(TAU + 1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bisect_finds_root() {
        let r = bisect(0.0, 2.0, 1e-14, |x| x * x - 2.0);
        assert!((r - sqrt(2.0)).abs() < 1e-13);
    }

    #[test]
    fn sign_changes_of_cos2t() {
        let roots = periodic_sign_changes(64, 1e-12, 1e-14, |t| cos(2.0 * t));
        assert_eq!(roots.len(), 4);
        for (k, r) in roots.iter().enumerate() {
            let want = PI / 4.0 + k as f64 * PI / 2.0;
            assert!((r - want).abs() < 1e-12, "{r} vs {want}");
        }
    }

    #[test]
    fn sign_changes_wrap_around() {
        // root at t = 0 is bracketed across the seam
        let roots = periodic_sign_changes(33, 1e-12, 1e-14, |t| sin(t - 0.01));
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 0.01).abs() < 1e-12);
        assert!(periodic_sign_changes(16, 1e-12, 1e-14, |_| 1.0).is_empty());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(3, 0), 1.0);
        assert_eq!(binomial(3, 3), 1.0);
    }
}
