//! Shape of `χ(t, κ)` and `χ_s(t)` in `t ∈ [0, ¼]`.
//!
//! The claims checked are convexity of both functions, monotonicity of both,
//! and the closed-form derivatives `∂_t χ`, `∂_t² χ` and `∂_κ ∂_t² χ`.
//!
//! Two facts about the displayed derivatives matter for the comparison:
//! - `∂_t² χ` and `∂_κ ∂_t² χ` are written with natural logarithms, so they
//!   are divided by `ln 2` to put them in bits like `χ` itself;
//! - `∂_t χ(t, κ) → (2 − 2√κ)/ln 2` as `t ↓ 0`, which is negative for `κ > 1`.
//!   So `χ(·, κ)` decreases near 0, and `χ_s` is not monotone on all of
//!   `[0, ¼]` once `√κ > 1 + 2s`. It is nondecreasing on `[(1−2ε)/4, ¼]`,
//!   the range that carries the order-`(1+s)` value; that range is reported
//!   as a separate check.

use rayon::prelude::*;

use super::{fd_step, merge_rows, relative_gap, richardson, Check, VerificationReport};
use crate::dsbs::{chi_kappa, chi_s, stationary_cell, Kappa};
use crate::error::Result;
use crate::scalar::LN_2;
use crate::tol;

/// `(√t, c − √t, c + √t)` with `c − √t` taken from the stationary cell, free of cancellation.
fn cells(t: f64, kappa: Kappa) -> (f64, f64, f64) {
    let rt = t.sqrt();
    let g = 0.5 - rt;
    let lower = stationary_cell(g, g, kappa);
    (rt, lower, lower + 2.0 * rt)
}

/// `∂_t χ(t, κ) = (1/(2√t))·log[((½+√t)/(½−√t))² / ((c+√t)/(c−√t))]`, in bits.
pub fn chi_d1(t: f64, kappa: Kappa) -> f64 {
    let (rt, lower, upper) = cells(t, kappa);
    let outer = 2.0 * (2.0 * rt / (0.5 - rt)).ln_1p();
    let inner = (2.0 * rt / lower).ln_1p();
    debug_assert!(upper > lower);
    (outer - inner) / (2.0 * rt * LN_2)
}

/// `∂_t² χ(t, κ)` in bits, for `κ = 1 + δ`.
///
/// The displayed bracket
/// `−4√t(4(κ−1)t − S + 1)/((4t−1)(4(κ−1)t+1)) + ln((2(κ−1)√t + S − 1)/(−2(κ−1)√t + S − 1)) − 2 ln((½+√t)/(½−√t))`
/// over `4t^{3/2}`, with `S = √(4(κ−1)κt + κ)`, is evaluated using
/// `S − 1 = 2(κ−1)c`, so that `4(κ−1)t − S + 1 = (κ−1)(4t − 2c)` and the
/// logarithm is `ln((c+√t)/(c−√t))`.
pub fn chi_d2(t: f64, delta: f64) -> f64 {
    let kappa = Kappa::from_ln(delta.ln_1p()).expect("delta >= 0");
    let (rt, lower, upper) = cells(t, kappa);
    let c = lower + rt;
    let first = -4.0 * rt * delta * (4.0 * t - 2.0 * c) / ((4.0 * t - 1.0) * (4.0 * delta * t + 1.0));
    let second = (2.0 * rt / lower).ln_1p();
    let third = -2.0 * (2.0 * rt / (0.5 - rt)).ln_1p();
    debug_assert!(upper > lower);
    (first + second + third) / (4.0 * t * rt * LN_2)
}

/// `∂_κ ∂_t² χ(t, κ) = 2(κ−1)κ / (4(κ−1)κt + κ)^{3/2}`, converted to bits, for `κ = 1 + δ`.
pub fn chi_dkappa_d2(t: f64, delta: f64) -> f64 {
    let k = 1.0 + delta;
    2.0 * delta * k / (4.0 * delta * k * t + k).powf(1.5) / LN_2
}

/// `ε` with `((1−ε)/ε)^{2s} = κ`.
fn eps_for(kappa: Kappa, s: f64) -> f64 {
    1.0 / (1.0 + (kappa.ln() / (2.0 * s)).exp())
}

/// Verifies the χ claims on a `kappa_n × s_n × t_n` grid.
///
/// `κ = 1 + 10^{−6 + 9i/(kappa_n−1)}`, `s = 10^{−1.3 + 2.6j/(s_n−1)}`, and `t`
/// runs over the `t_n` interior points `¼·k/(t_n+1)`. Each `(κ, s)` pair
/// fixes `ε` through `κ = ((1−ε)/ε)^{2s}`.
///
/// Checks:
/// - `chi_convex`, `chi_s_convex`: second differences `≥ −1e−8`;
/// - `chi_monotone`, `chi_s_monotone`: first differences `≥ −1e−8`;
/// - `chi_s_monotone_upper_range`: the same on `t ≥ (1−2ε)/4`;
/// - `d1_small_t`: `∂_t χ` at `t = 1e−14` against `(2 − 2√κ)/ln 2`;
/// - `d1_fd`, `d2_fd`: displayed derivatives against Richardson central
///   differences (of `χ`, and of the displayed `∂_t χ`), relative `1e−5`;
/// - `d2_kappa_monotone`: `∂_t² χ` nondecreasing along the `κ` grid;
/// - `dkappa_d2_fd`: displayed `∂_κ ∂_t² χ` against a difference in `κ`,
///   skipped for `κ − 1 < 1e−2` where the difference is below rounding noise;
/// - `d2_kappa_one`: `∂_t² χ → 0` as `κ ↓ 1`, at the first grid value.
pub fn verify_chi_properties(kappa_n: usize, s_n: usize, t_n: usize) -> Result<VerificationReport> {
    let kappa_n = kappa_n.max(2);
    let s_n = s_n.max(2);
    let t_n = t_n.max(3);
    let deltas: Vec<f64> = (0..kappa_n)
        .map(|i| 10f64.powf(-6.0 + 9.0 * i as f64 / (kappa_n - 1) as f64))
        .collect();
    let ss: Vec<f64> = (0..s_n)
        .map(|j| 10f64.powf(-1.3 + 2.6 * j as f64 / (s_n - 1) as f64))
        .collect();
    let ts: Vec<f64> = (1..=t_n).map(|k| 0.25 * k as f64 / (t_n + 1) as f64).collect();
    let shape = tol::SHAPE_SLACK;
    let fd = tol::FD_RELATIVE;
    let floor = tol::FD_SCALE_FLOOR;

    let names = [
        ("chi_convex", shape),
        ("chi_monotone", shape),
        ("d1_fd", fd),
        ("d2_fd", fd),
        ("d1_small_t", fd),
        ("chi_s_convex", shape),
        ("chi_s_monotone", shape),
        ("chi_s_monotone_upper_range", shape),
    ];
    let blank = || names.iter().map(|&(n, t)| Check::new(n, t)).collect::<Vec<_>>();

    let rows = deltas
        .par_iter()
        .map(|&delta| -> Result<Vec<Check>> {
            let mut row = blank();
            let kappa = Kappa::from_ln(delta.ln_1p())?;
            let chi: Vec<f64> = ts.iter().map(|&t| chi_kappa(t, kappa)).collect::<Result<_>>()?;
            for k in 0..t_n {
                let loc = [("kappa_minus_1", delta), ("t", ts[k])];
                if k + 2 < t_n {
                    row[0].observe(-(chi[k + 2] - 2.0 * chi[k + 1] + chi[k]), &loc);
                }
                if k + 1 < t_n {
                    row[1].observe(-(chi[k + 1] - chi[k]), &loc);
                }
                let t = ts[k];
                let h = fd_step(t);
                let f = |x: f64| chi_kappa(x, kappa).unwrap_or(f64::NAN);
                row[2].observe(relative_gap(chi_d1(t, kappa), richardson(f, t, h), floor), &loc);
                let d1 = |x: f64| chi_d1(x, kappa);
                row[3].observe(relative_gap(chi_d2(t, delta), richardson(d1, t, h), floor), &loc);
            }
            let limit = (2.0 - 2.0 * kappa.value().sqrt()) / LN_2;
            row[4].observe(
                relative_gap(chi_d1(1e-14, kappa), limit, floor),
                &[("kappa_minus_1", delta), ("t", 1e-14)],
            );

            for &s in &ss {
                let eps = eps_for(kappa, s);
                let v: Vec<f64> = ts.iter().map(|&t| chi_s(t, eps, s)).collect::<Result<_>>()?;
                let start = (1.0 - 2.0 * eps) / 4.0;
                for k in 0..t_n {
                    let loc = [("kappa_minus_1", delta), ("s", s), ("epsilon", eps), ("t", ts[k])];
                    if k + 2 < t_n {
                        row[5].observe(-(v[k + 2] - 2.0 * v[k + 1] + v[k]), &loc);
                    }
                    if k + 1 < t_n {
                        let step = -(v[k + 1] - v[k]);
                        row[6].observe(step, &loc);
                        if ts[k] >= start {
                            row[7].observe(step, &loc);
                        }
                    }
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut grid_checks = merge_rows(rows, blank());

    let mut monotone = Check::new("d2_kappa_monotone", shape);
    let mut dkappa = Check::new("dkappa_d2_fd", fd);
    let mut at_one = Check::new("d2_kappa_one", shape);
    for &t in &ts {
        let d2: Vec<f64> = deltas.iter().map(|&d| chi_d2(t, d)).collect();
        for i in 0..kappa_n {
            let loc = [("kappa_minus_1", deltas[i]), ("t", t)];
            if i + 1 < kappa_n {
                monotone.observe(-(d2[i + 1] - d2[i]), &loc);
            }
            let delta = deltas[i];
            if delta < 1e-2 {
                dkappa.skip();
                continue;
            }
            let h = 1e-4 * delta;
            let num = richardson(|d| chi_d2(t, d), delta, h);
            dkappa.observe(relative_gap(chi_dkappa_d2(t, delta), num, floor), &loc);
        }
        at_one.observe(d2[0].abs(), &[("kappa_minus_1", deltas[0]), ("t", t)]);
    }
    grid_checks.extend([monotone, dkappa, at_one]);

    let mut report =
        VerificationReport::from_checks("chi", grid_checks.into_iter().map(Check::finish).collect());
    report.notes.push(format!(
        "grid {kappa_n} kappa x {s_n} s x {t_n} t; derivatives of the displayed formulas are in \
         nats and compared after division by ln 2"
    ));
    report.notes.push(
        "d/dt chi(t, kappa) tends to (2 - 2 sqrt(kappa))/ln 2 < 0 as t -> 0, so the monotonicity \
         checks over all of [0, 1/4] are expected to fail for larger kappa"
            .to_string(),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn derivative_limits() {
        let one = Kappa::from_ln(1e-6f64.ln_1p()).unwrap();
        assert!(chi_d2(0.1, 1e-6).abs() < 1e-5);
        assert!(chi_d1(1e-14, one).abs() < 1e-5);
        let five = Kappa::new(5.0).unwrap();
        assert_abs_diff_eq!(
            chi_d1(1e-14, five),
            (2.0 - 2.0 * 5f64.sqrt()) / LN_2,
            epsilon = 1e-5
        );
    }

    #[test]
    fn interior_derivatives_match_differences() {
        let k = Kappa::new(5.0).unwrap();
        let t = 0.1;
        let h = fd_step(t);
        let d1 = richardson(|x| chi_kappa(x, k).unwrap(), t, h);
        assert!(relative_gap(chi_d1(t, k), d1, 1e-3) < 1e-7);
        let d2 = richardson(|x| chi_d1(x, k), t, h);
        assert!(relative_gap(chi_d2(t, 4.0), d2, 1e-3) < 1e-7);
        let dk = richardson(|d| chi_d2(t, d), 4.0, 1e-4);
        assert!(relative_gap(chi_dkappa_d2(t, 4.0), dk, 1e-3) < 1e-6);
    }

    #[test]
    fn eps_for_inverts_kappa() {
        let k = Kappa::from_eps_s(0.2, 1.5).unwrap();
        assert_abs_diff_eq!(eps_for(k, 1.5), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn coarse_grid_reports_expected_failures_only() {
        let r = verify_chi_properties(4, 3, 20).unwrap();
        for c in &r.checks {
            let expected_red = matches!(c.name, "chi_monotone" | "chi_s_monotone");
            assert_eq!(c.pass, !expected_red, "{c:?}");
        }
    }
}
