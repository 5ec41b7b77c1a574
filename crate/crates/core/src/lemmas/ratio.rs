//! Monotonicity of `φ(t) = D((1−t)/2 ‖ ½)/t²` on `(0, 1]`.
//!
//! The proof writes `φ′(t) = ψ(t)/(t³ ln 2)` with
//! `ψ(t) = −(2−t)log(1−t) − (t+2)log(1+t)` and shows `ψ ≥ ψ(0) = 0`.
//! As `t ↓ 0`, `φ(t) → 1/(2 ln 2) = 1/ln 4`; at `t = 1`, `φ = 1`.

use super::{relative_gap, Check, VerificationReport};
use crate::scalar::{entropy_deficit, log2_1p, LN_2};
use crate::tol;

/// `φ(t) = (1 − H((1−t)/2))/t²`.
pub fn phi_ratio(t: f64) -> f64 {
    entropy_deficit(t) / (t * t)
}

/// `ψ(t) = −(2−t)log(1−t) − (t+2)log(1+t)`; `+∞` at `t = 1`.
pub fn psi(t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    -(2.0 - t) * log2_1p(-t) - (t + 2.0) * log2_1p(t)
}

/// Verifies the ratio lemma on `grid` points `t = i/grid`, `i = 1..=grid`.
///
/// Checks `phi_monotone` and `psi_nonnegative` at the proven slack, the value
/// `psi(0) = 0`, the small-`t` limit at `t = 1e−4` (relative 1e−5), and
/// `φ(1) = 1`.
pub fn verify_phi_ratio_monotone(grid: usize) -> VerificationReport {
    let grid = grid.max(2);
    let slack = tol::PROVEN_SLACK;
    let ts: Vec<f64> = (1..=grid).map(|i| i as f64 / grid as f64).collect();

    let mut monotone = Check::new("phi_monotone", slack);
    let mut nonneg = Check::new("psi_nonnegative", slack);
    let mut prev = phi_ratio(ts[0]);
    for (i, &t) in ts.iter().enumerate() {
        let v = phi_ratio(t);
        if i > 0 {
            monotone.observe(prev - v, &[("t", t)]);
        }
        prev = v;
        let p = psi(t);
        nonneg.observe(if p.is_infinite() { f64::NEG_INFINITY } else { -p }, &[("t", t)]);
    }
    let mut at_zero = Check::new("psi_at_zero", 0.0);
    at_zero.observe(psi(0.0).abs(), &[("t", 0.0)]);
    let mut limit = Check::new("phi_small_t_limit", tol::FD_RELATIVE);
    limit.observe(
        relative_gap(phi_ratio(1e-4), 1.0 / (2.0 * LN_2), 0.0),
        &[("t", 1e-4)],
    );
    let mut at_one = Check::new("phi_at_one", tol::EQUALITY);
    at_one.observe((phi_ratio(1.0) - 1.0).abs(), &[("t", 1.0)]);

    let checks = [monotone, nonneg, at_zero, limit, at_one]
        .into_iter()
        .map(Check::finish)
        .collect();
    VerificationReport::from_checks("phi-ratio", checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn values() {
        assert_eq!(psi(0.0), 0.0);
        assert!(psi(1.0).is_infinite());
        assert_abs_diff_eq!(psi(0.5), 0.037_6, epsilon = 1e-4);
        assert_abs_diff_eq!(phi_ratio(1.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi_ratio(1e-4), 1.0 / (2.0 * LN_2), epsilon = 1e-8);
    }

    #[test]
    fn suite_passes() {
        let r = verify_phi_ratio_monotone(1000);
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.points_checked, 999 + 1000 + 3);
    }
}
