//! Negative orders: the upper bound `Γ^UB_α`, Condition 1 and its threshold `ε₀`.
//!
//! For `α < 0` the common information of DSBS(ε) is sandwiched between
//! Wyner's value and
//!
//! ```text
//! Γ^UB_α = sup_{r ∈ [0, ε]} C(r, (1 − 1/α)·D(r‖ε))
//! ```
//!
//! The two coincide when Condition 1 holds:
//! `ω(ε, s) ≤ 0` for all `s ∈ [0, (1−2ε)/(1−ε)²]`. Numerically this is the
//! case exactly for `ε ≥ ε₀ ≈ 0.0551`.
//!
//! Condition 1 is the last link of a chain of sufficient conditions on
//! `t ∈ [t₁, c]`, with `c = √(1−2ε)/(1−ε)`:
//! `ω ≤ 0  ⇒  chain_lhs ≤ 0  ⇔  g′ ≤ 0  ⇒  g ≥ 0`, and `g ≥ 0` on
//! `[t₁, c]` is the statement that the supremum above sits at `r = ε`.
//! Here `t₁` solves `1 − H((1−t)/2) = η`; it is the image of `r = 0`.

use rayon::prelude::*;
use serde::Serialize;

use crate::dsbs::{wyner_ci, CiResult, DsbsParams, Order, Tightness, Witness};
use crate::error::{check_range, Error, Result};
use crate::relaxed::relaxed_ci;
use crate::scalar::{binary_entropy, binary_relative_entropy, entropy_deficit, log2_1p, Bits, LN_2};
use crate::solve::{bisect_predicate, brent, golden_max};
use crate::tol;

fn check_eps_open(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::Domain {
            name: "epsilon",
            value: eps,
            expected: "(0, 1/2]",
        });
    }
    Ok(eps)
}

/// Right end of the Condition-1 range, `(1−2ε)/(1−ε)²`.
pub fn s_range_end(eps: f64) -> f64 {
    (1.0 - 2.0 * eps) / ((1.0 - eps) * (1.0 - eps))
}

/// `d = 4(1−H(b))²·((1−ε)³/(1−2ε))·log(ε̄/ε)`; 0 at `ε = ½`.
pub fn omega_d(eps: f64) -> Result<f64> {
    let eps = check_eps_open(eps)?;
    if eps == 0.5 {
        return Ok(0.0);
    }
    let b = DsbsParams::new(eps)?.b;
    let h = 1.0 - binary_entropy(b);
    Ok(4.0 * h * h * (1.0 - eps).powi(3) / (1.0 - 2.0 * eps) * ((1.0 - eps) / eps).log2())
}

fn omega_with(d: f64, eps: f64, s: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    let l = log2_1p(-s);
    let ratio = (1.0 - eps) / (1.0 - 2.0 * eps);
    l * l * l + d * s * s / (1.0 - s) * (ratio * ratio * s - 1.0)
}

/// `ω(ε, s) = log³(1−s) + (d s²/(1−s))·(((1−ε)/(1−2ε))² s − 1)`.
pub fn omega(eps: f64, s: f64) -> Result<f64> {
    let d = omega_d(eps)?;
    let end = s_range_end(eps);
    let s = check_range("s", s, 0.0, end + tol::PROBABILITY_SLACK, "[0, (1-2e)/(1-e)^2]")?;
    Ok(omega_with(d, eps, s.min(end)))
}

/// Outcome of a Condition-1 check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Condition1Report {
    pub epsilon: f64,
    pub holds: bool,
    pub s_range_end: f64,
    pub worst_s: f64,
    pub worst_omega: f64,
    pub grid_points: usize,
}

/// Decides Condition 1 on a uniform grid of `grid` points over the `s` range
/// (both ends included), refined by golden section around the grid maximum.
///
/// `ω(ε, 0) = 0`, so `holds` means that no point of the range exceeds 0.
pub fn condition1_holds(eps: f64, grid: usize) -> Result<Condition1Report> {
    let eps = check_eps_open(eps)?;
    if grid < 1000 {
        return Err(Error::Domain {
            name: "grid",
            value: grid as f64,
            expected: "at least 1000 points",
        });
    }
    let end = s_range_end(eps);
    if end == 0.0 {
        return Ok(Condition1Report {
            epsilon: eps,
            holds: true,
            s_range_end: 0.0,
            worst_s: 0.0,
            worst_omega: 0.0,
            grid_points: 1,
        });
    }
    let d = omega_d(eps)?;
    let w = |s: f64| omega_with(d, eps, s);
    let at = |i: usize| {
        if i == grid - 1 {
            end
        } else {
            end * i as f64 / (grid - 1) as f64
        }
    };
    let (best_i, mut worst_omega) = (0..grid)
        .map(|i| (i, w(at(i))))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let mut worst_s = at(best_i);
    let lo = at(best_i.saturating_sub(1));
    let hi = at((best_i + 1).min(grid - 1));
    let (s_ref, w_ref) = golden_max(w, lo, hi, tol::OMEGA_REFINE);
    if w_ref > worst_omega {
        worst_s = s_ref;
        worst_omega = w_ref;
    }
    Ok(Condition1Report {
        epsilon: eps,
        holds: worst_omega <= 0.0,
        s_range_end: end,
        worst_s,
        worst_omega,
        grid_points: grid,
    })
}

/// Result of the `ε₀` search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Epsilon0 {
    /// Midpoint of the final bracket.
    pub epsilon0: f64,
    /// Largest `ε` found where Condition 1 fails.
    pub lo: f64,
    /// Smallest `ε` found where Condition 1 holds.
    pub hi: f64,
    pub tolerance: f64,
    /// Whether the verdict changed exactly once on the pre-scan.
    pub single_crossing: bool,
    pub scan_points: usize,
    pub bisection_steps: usize,
    pub grid: usize,
}

/// Points in the monotonicity pre-scan of [`epsilon0`].
pub const EPSILON0_SCAN: usize = 64;

/// `ε₀` bracketed in `[0.01, 0.10]`, to within `tolerance`.
pub fn epsilon0(tolerance: f64) -> Result<Epsilon0> {
    epsilon0_in(tolerance, 0.01, 0.10, tol::CONDITION1_GRID)
}

/// `ε₀` by bisection of the Condition-1 verdict on `[lo, hi]`.
///
/// The verdict is first evaluated on [`EPSILON0_SCAN`] evenly spaced points.
/// If it switches from "fails" to "holds" exactly once, bisection runs on
/// that scan cell. Otherwise `single_crossing` is reported false and the
/// bisection runs on the cell of the last switch, so the result is the
/// threshold above which the condition holds throughout the scan.
pub fn epsilon0_in(tolerance: f64, lo: f64, hi: f64, grid: usize) -> Result<Epsilon0> {
    let tolerance = check_range("tolerance", tolerance, 1e-12, 1e-3, "[1e-12, 1e-3]")?;
    check_eps_open(lo)?;
    check_eps_open(hi)?;
    if lo >= hi {
        return Err(Error::Domain {
            name: "bracket",
            value: hi,
            expected: "hi > lo",
        });
    }
    let verdict = |e: f64| condition1_holds(e, grid).map(|r| r.holds);
    let (v_lo, v_hi) = (verdict(lo)?, verdict(hi)?);
    if v_lo == v_hi || v_lo {
        return Err(Error::SameVerdict {
            lo,
            hi,
            verdict: v_lo,
        });
    }

    let n = EPSILON0_SCAN;
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect();
    let verdicts = xs
        .par_iter()
        .map(|&e| verdict(e))
        .collect::<Result<Vec<bool>>>()?;
    let switches: Vec<usize> = (1..n).filter(|&i| verdicts[i] != verdicts[i - 1]).collect();
    let single_crossing = switches.len() == 1;
    let cell = *switches.last().expect("end verdicts differ");

    let pred = |e: f64| verdict(e).unwrap_or(true);
    let (a, b, steps) = bisect_predicate(pred, xs[cell - 1], xs[cell], tolerance);
    Ok(Epsilon0 {
        epsilon0: 0.5 * (a + b),
        lo: a,
        hi: b,
        tolerance,
        single_crossing,
        scan_points: n,
        bisection_steps: steps,
        grid,
    })
}

/// `Γ^UB_α` for `α < 0`, by a dense `r` grid on `[0, ε]` refined by golden section.
///
/// Uses the exact factor 1 at `α = −∞`. The witness records `r*`, the
/// budget `t = (1 − 1/α)D(r*‖ε)` and the optimal `q`.
pub fn gamma_ub_negative(eps: f64, order: Order) -> Result<CiResult> {
    gamma_ub_negative_grid(eps, order, tol::NEGATIVE_GRID)
}

/// [`gamma_ub_negative`] with an explicit number of grid intervals.
pub fn gamma_ub_negative_grid(eps: f64, order: Order, grid: usize) -> Result<CiResult> {
    let eps = check_eps_open(eps)?;
    let Some(factor) = order.budget_factor() else {
        return Err(Error::Domain {
            name: "alpha",
            value: order.alpha(),
            expected: "[-inf, 0)",
        });
    };
    let grid = grid.max(2);
    let objective = |r: f64| -> Result<(Bits, f64, f64)> {
        let t = factor * binary_relative_entropy(r, eps);
        let w = relaxed_ci(r, t)?;
        Ok((w.value, w.q, t))
    };
    let rs: Vec<f64> = (0..=grid)
        .map(|i| if i == grid { eps } else { eps * i as f64 / grid as f64 })
        .collect();
    let values = rs
        .par_iter()
        .map(|&r| objective(r).map(|v| v.0))
        .collect::<Result<Vec<f64>>>()?;
    let best_i = (0..values.len()).fold(0, |b, i| if values[i] > values[b] { i } else { b });

    let lo = rs[best_i.saturating_sub(1)];
    let hi = rs[(best_i + 1).min(grid)];
    let (r_ref, v_ref) = golden_max(
        |r| objective(r).map_or(f64::NEG_INFINITY, |v| v.0),
        lo,
        hi,
        tol::ORACLE_WIDTH * eps,
    );
    let r_star = if v_ref > values[best_i] { r_ref } else { rs[best_i] };
    let (value, q, t) = objective(r_star)?;
    Ok(CiResult {
        value,
        alpha: order,
        regime: order.regime(),
        epsilon: eps,
        tightness: Tightness::UpperBound,
        witness: Some(Witness::Negative { r_star, q, t }),
    })
}

/// One point of the negative-order phase diagram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub epsilon: f64,
    pub gamma_ub_minus_inf: Bits,
    pub wyner: Bits,
    /// `gamma_ub_minus_inf − wyner`.
    pub gap: Bits,
    pub r_star: f64,
}

/// `Γ^UB_{−∞} − C_W` on `points` evenly spaced crossovers in `[eps_min, eps_max]`.
pub fn phase_scan(eps_min: f64, eps_max: f64, points: usize) -> Result<Vec<PhasePoint>> {
    check_eps_open(eps_min)?;
    check_eps_open(eps_max)?;
    if eps_min >= eps_max || points < 2 {
        return Err(Error::Domain {
            name: "eps_max",
            value: eps_max,
            expected: "eps_max > eps_min and at least 2 points",
        });
    }
    let eps: Vec<f64> = (0..points)
        .map(|i| {
            if i == points - 1 {
                eps_max
            } else {
                eps_min + (eps_max - eps_min) * i as f64 / (points - 1) as f64
            }
        })
        .collect();
    eps.par_iter()
        .map(|&e| {
            let ub = gamma_ub_negative(e, Order::MinusInfinity)?;
            let wyner = wyner_ci(e)?;
            let r_star = match ub.witness {
                Some(Witness::Negative { r_star, .. }) => r_star,
                _ => e,
            };
            Ok(PhasePoint {
                epsilon: e,
                gamma_ub_minus_inf: ub.value,
                wyner,
                gap: ub.value - wyner,
                r_star,
            })
        })
        .collect()
}

fn check_eps_interior(eps: f64) -> Result<DsbsParams> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::Domain {
            name: "epsilon",
            value: eps,
            expected: "(0, 1/2)",
        });
    }
    DsbsParams::new(eps)
}

/// Left end `t₁` of the chain domain: the root of `1 − H((1−t)/2) = η` in `(0, c]`.
pub fn t_lower(eps: f64) -> Result<f64> {
    let p = check_eps_interior(eps)?;
    brent(|t| entropy_deficit(t) - p.eta, 0.0, p.c_len)
}

/// `g(t) = log((A + ηt)/(A − ηt)) + ((log(1+t) − log(1−t))/log(1−t²))·log(ε̄/ε)`,
/// where `A = 1 − H((1−t)/2)`.
///
/// Defined where `A > ηt`, which contains `[t₁, c]`; `g(c) = 0`.
/// As `t ↓ 0`, `A ≈ t²/(2 ln 2)` falls below `ηt`, so there is no limit at 0.
pub fn g_condition(t: f64, eps: f64) -> Result<f64> {
    let p = check_eps_interior(eps)?;
    let t = check_range("t", t, 0.0, p.c_len, "(0, c]")?;
    let a = entropy_deficit(t);
    if a.partial_cmp(&(p.eta * t)) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Domain {
            name: "t",
            value: t,
            expected: "1 - H((1-t)/2) > eta t",
        });
    }
    let l = ((1.0 - eps) / eps).log2();
    let first = ((a + p.eta * t) / (a - p.eta * t)).log2();
    let second = (log2_1p(t) - log2_1p(-t)) / log2_1p(-t * t) * l;
    Ok(first + second)
}

/// `g′(t)`, with the `1/ln 2` factor that differentiating base-2 logarithms produces:
/// `(1/ln 2)·[η log(1−t²)/(A² − η²t²) + 4A·log(ε̄/ε)/((1−t²) log²(1−t²))]`.
pub fn g_condition_derivative(t: f64, eps: f64) -> Result<f64> {
    let p = check_eps_interior(eps)?;
    let t = check_range("t", t, 0.0, p.c_len, "(0, c]")?;
    let a = entropy_deficit(t);
    let l = ((1.0 - eps) / eps).log2();
    let lg = log2_1p(-t * t);
    let first = p.eta * lg / (a * a - p.eta * p.eta * t * t);
    let second = 4.0 * a * l / ((1.0 - t * t) * lg * lg);
    Ok((first + second) / LN_2)
}

/// `η(1−t²)log³(1−t²) + 4A(A² − η²t²)·log(ε̄/ε)`; has the sign of `g′` where `A > ηt`.
pub fn chain_lhs(t: f64, eps: f64) -> Result<f64> {
    let p = check_eps_interior(eps)?;
    let t = check_range("t", t, 0.0, p.c_len, "[0, c]")?;
    let a = entropy_deficit(t);
    let l = ((1.0 - eps) / eps).log2();
    let lg = log2_1p(-t * t);
    Ok(p.eta * (1.0 - t * t) * lg * lg * lg + 4.0 * a * (a * a - p.eta * p.eta * t * t) * l)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// 50-digit root of `ω(ε, s_end(ε)) = 0`.
    const EPS0_MP: f64 = 0.055_104_651_702_979_850_058;

    #[test]
    fn omega_basics() {
        for &e in &[0.01, 0.1, 0.3, 0.5] {
            assert_eq!(omega(e, 0.0).unwrap(), 0.0);
        }
        assert!(omega(0.3, 0.5 * s_range_end(0.3)).unwrap() <= 0.0);
        assert!(omega(0.3, 1.0).is_err());
        assert!(omega(0.0, 0.0).is_err());
        // The two displays of d agree.
        for &e in &[0.02, 0.1, 0.3, 0.45] {
            let p = DsbsParams::new(e).unwrap();
            let alt = 4.0 * p.eta * p.eta * (1.0 - e) / (1.0 - 2.0 * e) * ((1.0 - e) / e).log2();
            assert_abs_diff_eq!(omega_d(e).unwrap(), alt, epsilon = 1e-12);
        }
    }

    #[test]
    fn condition1_verdicts() {
        assert!(condition1_holds(0.3, 1000).unwrap().holds);
        assert!(condition1_holds(0.1, 10_000).unwrap().holds);
        let r = condition1_holds(0.03, 10_000).unwrap();
        assert!(!r.holds);
        assert!(r.worst_omega > 0.0 && r.worst_s <= r.s_range_end);
        assert!(!condition1_holds(0.05, 10_000).unwrap().holds);
        let half = condition1_holds(0.5, 1000).unwrap();
        assert!(half.holds && half.s_range_end == 0.0);
        assert!(condition1_holds(0.3, 10).is_err());
    }

    #[test]
    fn epsilon0_matches_high_precision_root() {
        let e = epsilon0(1e-10).unwrap();
        assert!(e.single_crossing);
        assert!(e.hi - e.lo <= 1e-10);
        assert_abs_diff_eq!(e.epsilon0, EPS0_MP, epsilon = 1e-10);
        assert!(condition1_holds(e.epsilon0 + 1e-4, 10_000).unwrap().holds);
        assert!(!condition1_holds(e.epsilon0 - 1e-4, 10_000).unwrap().holds);
    }

    #[test]
    fn epsilon0_rejects_bad_brackets() {
        assert!(matches!(
            epsilon0_in(1e-6, 0.1, 0.2, 1000),
            Err(Error::SameVerdict { verdict: true, .. })
        ));
        assert!(epsilon0_in(1e-2, 0.01, 0.1, 1000).is_err());
    }

    #[test]
    fn negative_upper_bound_values() {
        let w = wyner_ci(0.3).unwrap();
        let r = gamma_ub_negative_grid(0.3, Order::MinusInfinity, 1000).unwrap();
        assert_abs_diff_eq!(r.value, w, epsilon = 1e-12);
        match r.witness {
            Some(Witness::Negative { r_star, t, .. }) => {
                assert_abs_diff_eq!(r_star, 0.3, epsilon = 1e-9);
                assert_abs_diff_eq!(t, 0.0, epsilon = 1e-12);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        let r = gamma_ub_negative_grid(0.3, Order::new(-1.0).unwrap(), 1000).unwrap();
        assert_abs_diff_eq!(r.value, w, epsilon = 1e-12);
        let r = gamma_ub_negative_grid(0.03, Order::MinusInfinity, 2000).unwrap();
        assert!(r.value > wyner_ci(0.03).unwrap());
        assert!(gamma_ub_negative(0.3, Order::new(2.0).unwrap()).is_err());
    }

    #[test]
    fn chain_functions() {
        for &e in &[0.03, 0.1, 0.3, 0.45] {
            let p = DsbsParams::new(e).unwrap();
            assert_abs_diff_eq!(g_condition(p.c_len, e).unwrap(), 0.0, epsilon = 1e-9);
            let t1 = t_lower(e).unwrap();
            assert!(t1 > 0.0 && t1 < p.c_len);
            assert_abs_diff_eq!(entropy_deficit(t1), p.eta, epsilon = 1e-14);
            assert!(g_condition(t1, e).unwrap().is_finite());
        }
        assert!(g_condition(1e-6, 0.3).is_err());
        let p = DsbsParams::new(0.3).unwrap();
        let t = 0.5 * (t_lower(0.3).unwrap() + p.c_len);
        assert!(g_condition(t, 0.3).unwrap() >= 0.0);
        // g′ against a central difference.
        let h = 1e-6;
        let fd = (g_condition(t + h, 0.3).unwrap() - g_condition(t - h, 0.3).unwrap()) / (2.0 * h);
        let an = g_condition_derivative(t, 0.3).unwrap();
        assert!((fd - an).abs() <= 1e-6 * an.abs().max(1e-3), "{fd} vs {an}");
        assert_eq!(
            chain_lhs(t, 0.3).unwrap().signum(),
            an.signum()
        );
    }

    #[test]
    fn phase_scan_orders_points() {
        let pts = phase_scan(0.2, 0.4, 3).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.windows(2).all(|w| w[0].epsilon < w[1].epsilon));
        for p in &pts {
            assert!(p.gap.abs() <= 1e-9);
        }
    }
}
