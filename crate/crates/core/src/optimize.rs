//! One-dimensional maximization on an open interval.

use crate::error::{Error, Result};

/// Number of bracketing samples taken before the golden-section search.
pub const SCAN_POINTS: usize = 256;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

/// Interior maximum of `f` on (lo, hi).
///
/// A uniform scan brackets the best sample, golden section narrows the
/// bracket, and a bisection on the sign of the central-difference slope
/// polishes the location. A maximum sitting on either end of the interval
/// is reported as an error since the caller asked for a stationary point.
pub fn maximize<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Maximum> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Optimize(format!("empty interval ({lo}, {hi})")));
    }
    let n = SCAN_POINTS;
    let step = (hi - lo) / (n + 1) as f64;
    let xs: Vec<f64> = (1..=n).map(|k| lo + step * k as f64).collect();
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (k, &x) in xs.iter().enumerate() {
        let y = f(x);
        if y.is_nan() {
            return Err(Error::Optimize(format!("objective is NaN at {x}")));
        }
        if y > best_val {
            best_val = y;
            best = k;
        }
    }
    if !best_val.is_finite() {
        return Err(Error::Optimize("objective is unbounded".into()));
    }
    let a0 = if best == 0 { lo } else { xs[best - 1] };
    let b0 = if best == n - 1 { hi } else { xs[best + 1] };
    let (mut a, mut b) = (a0, b0);

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
    }
    let mut x = 0.5 * (a + b);

    // golden section stalls where rounding noise flattens the peak; bisect on
    // the slope sign over the scan bracket instead
    let h = 1e-5 * (b0 - a0);
    let slope = |x: f64| f(x + h) - f(x - h);
    let (mut l, mut r) = (a0.max(lo + 2.0 * h), b0.min(hi - 2.0 * h));
    if l < x && x < r && slope(l) > 0.0 && slope(r) < 0.0 {
        for _ in 0..200 {
            let m = 0.5 * (l + r);
            if m <= l || m >= r {
                break;
            }
            if slope(m) > 0.0 {
                l = m;
            } else {
                r = m;
            }
        }
        x = 0.5 * (l + r);
    }

    let edge = 1e-9 * (hi - lo);
    if x - lo <= edge || hi - x <= edge {
        return Err(Error::Optimize(format!(
            "maximum lies on the boundary of ({lo}, {hi})"
        )));
    }
    Ok(Maximum { x, value: f(x) })
}

/// Central-difference derivative with absolute step `h`.
pub fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Slope at an interior point of (lo, hi): Richardson-extrapolated central
/// differences with a step of `rel_step` times the distance to the nearer end
/// (capped at `rel_step`).
pub fn interior_slope<F: Fn(f64) -> f64>(f: F, x: f64, lo: f64, hi: f64, rel_step: f64) -> f64 {
    let h = rel_step * (x - lo).min(hi - x).min(1.0);
    (4.0 * central_difference(&f, x, h / 2.0) - central_difference(&f, x, h)) / 3.0
}

/// First root of `f` on [lo, hi] located by a scan of `n` cells followed by
/// bisection. `None` when no sign change is seen.
pub fn first_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Option<f64> {
    let mut prev_x = lo;
    let mut prev = f(lo);
    for k in 1..=n {
        let x = lo + (hi - lo) * k as f64 / n as f64;
        let y = f(x);
        if prev == 0.0 {
            return Some(prev_x);
        }
        if prev.signum() != y.signum() && y.is_finite() && prev.is_finite() {
            let (mut a, mut b, mut fa) = (prev_x, x, prev);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let fm = f(m);
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            return Some(0.5 * (a + b));
        }
        prev_x = x;
        prev = y;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let m = maximize(|x| -(x - 0.3).powi(2) + 2.0, 0.0, 1.0).unwrap();
        assert!((m.x - 0.3).abs() < 1e-9);
        assert!((m.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn sharp_peak_near_edge() {
        let m = maximize(|x: f64| x * (-x / 1e-3).exp(), 0.0, 1.0).unwrap();
        assert!((m.x - 1e-3).abs() < 1e-10, "{}", m.x);
    }

    #[test]
    fn monotone_is_boundary() {
        assert!(maximize(|x| x, 0.0, 1.0).is_err());
        assert!(maximize(|x| -x, 0.0, 1.0).is_err());
        assert!(maximize(|x| x, 1.0, 1.0).is_err());
    }

    #[test]
    fn richardson_slope() {
        let f = |x: f64| (3.0 * x).sin();
        let s = interior_slope(f, 0.01, 0.0, 1.0, 1e-2);
        assert!((s - 3.0 * (0.03f64).cos()).abs() < 1e-10);
    }

    #[test]
    fn roots() {
        let r = first_root(|x| x * x - 2.0, 0.0, 3.0, 10).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        assert!(first_root(|x| x * x + 1.0, 0.0, 3.0, 10).is_none());
    }
}
