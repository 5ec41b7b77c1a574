//! One-dimensional solvers: bracketed root finding and golden-section search.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// `1/φ` for the golden ratio φ.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Brent's method on a bracket `[lo, hi]` with `f(lo)` and `f(hi)` of opposite sign.
///
/// Inverse quadratic / secant steps are accepted only when they stay inside
/// the bracket and shrink it fast enough; otherwise the step is a bisection.
/// Iterates until the bracket is at machine resolution or `f` hits zero.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NotBracketed {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * f64::MIN_POSITIVE;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    Ok(b)
}

/// Plain bisection, `width` being the final bracket width.
///
/// `pred(lo)` and `pred(hi)` must differ; returns the final `(lo, hi)` with the
/// same verdicts as the inputs and the number of halvings performed.
pub fn bisect_predicate<P: FnMut(f64) -> bool>(
    mut pred: P,
    mut lo: f64,
    mut hi: f64,
    width: f64,
) -> (f64, f64, usize) {
    let lo_verdict = pred(lo);
    let mut steps = 0;
    while hi - lo > width && steps < 200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) == lo_verdict {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    (lo, hi, steps)
}

/// Sign-change brackets of `f` on a uniform `n`-interval partition of `[lo, hi]`.
///
/// A grid point where `f` is exactly zero is reported as a degenerate bracket.
pub fn scan_brackets<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    n: usize,
) -> Vec<(f64, f64)> {
    let n = n.max(1);
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    if f0 == 0.0 {
        out.push((x0, x0));
    }
    for i in 1..=n {
        let x1 = if i == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / n as f64
        };
        let f1 = f(x1);
        if f1 == 0.0 {
            out.push((x1, x1));
        } else if f0 != 0.0 && f0.signum() != f1.signum() {
            out.push((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    out
}

/// Golden-section maximization driven by a comparator.
///
/// `better(x, y)` returns [`Ordering::Greater`] when the objective at `y`
/// exceeds the objective at `x`. Passing a comparator rather than values
/// lets callers compute the difference of the objective at two nearby points
/// without the cancellation of subtracting two rounded totals. Stops once the
/// bracket is at most `width` wide.
pub fn golden_max_by<C: FnMut(f64, f64) -> Ordering>(
    mut better: C,
    lo: f64,
    hi: f64,
    width: f64,
) -> f64 {
    let (mut a, mut b) = (lo, hi);
    if b - a <= width {
        return 0.5 * (a + b);
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    for _ in 0..400 {
        if b - a <= width {
            break;
        }
        if better(x1, x2) == Ordering::Greater {
            // objective(x2) > objective(x1): the maximum is right of x1.
            a = x1;
            x1 = x2;
            x2 = a + INV_PHI * (b - a);
        } else {
            b = x2;
            x2 = x1;
            x1 = b - INV_PHI * (b - a);
        }
        if !(a < x1 && x1 <= x2 && x2 < b) {
            x1 = b - INV_PHI * (b - a);
            x2 = a + INV_PHI * (b - a);
            if !(a < x1 && x2 < b) {
                break;
            }
        }
    }
    0.5 * (a + b)
}

/// Golden-section maximization of `f` on `[lo, hi]`; returns `(argmax, max)`.
///
/// The endpoints are compared against the interior result so that maxima on
/// the boundary are reported exactly.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, width: f64) -> (f64, f64) {
    let x = golden_max_by(
        |x, y| f(y).partial_cmp(&f(x)).unwrap_or(Ordering::Equal),
        lo,
        hi,
        width,
    );
    let mut best = (x, f(x));
    for end in [lo, hi] {
        let v = f(end);
        if v > best.1 {
            best = (end, v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn brent_finds_sqrt2() {
        let r = brent(|x| x * x - 2.0, 0.0, 2.0).unwrap();
        assert_abs_diff_eq!(r, std::f64::consts::SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn brent_rejects_non_bracket() {
        let err = brent(|x| x * x + 1.0, -1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::NotBracketed { .. }));
    }

    #[test]
    fn brent_flat_root() {
        // Root of multiplicity three.
        let r = brent(|x: f64| (x - 0.3).powi(3), 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(r, 0.3, epsilon = 1e-5);
    }

    #[test]
    fn scan_reports_all_sign_changes() {
        let b = scan_brackets(|x: f64| (x * 10.0).sin(), 0.1, 3.0, 64);
        // sin(10x) vanishes at kπ/10 for k = 1..=9 inside (0.1, 3.0).
        assert_eq!(b.len(), 9);
    }

    #[test]
    fn golden_max_interior_and_boundary() {
        let (x, v) = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-12);
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-7);
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-14);
        let (x, _) = golden_max(|x| x, 0.0, 1.0, 1e-12);
        assert_eq!(x, 1.0);
    }

    #[test]
    fn bisect_predicate_brackets_threshold() {
        let (lo, hi, steps) = bisect_predicate(|x| x >= 0.123_456, 0.0, 1.0, 1e-10);
        assert!(lo < 0.123_456 && hi >= 0.123_456);
        assert!(hi - lo <= 1e-10);
        assert!(steps > 30);
    }
}
