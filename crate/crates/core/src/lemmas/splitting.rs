//! Entropy splitting.
//!
//! For symmetric couplings `p₁` of `(γ₁, γ₁)` and `p₂` of `(γ₂, γ₂)`:
//!
//! 1. `H(γ₁) + H(γ₂) ≥ ½(H(p₁, γ₁−p₁, γ₁−p₁, 1+p₁−2γ₁) + H(p₂, …))`;
//! 2. if `p = (p₁+p₂)/2 ≤ γ₁γ₂`, the asymmetric coupling with cell `p`
//!    has at least that averaged entropy.
//!
//! Statement 2 is swept in the coordinates `p₁ = p+s`, `p₂ = p−s`,
//! `γ₁ = γ+t`, `γ₂ = γ−t`, where it reads `φ(s, t) ≥ 0` on the region
//! `R(p, γ)`. The equality boundary `t² = γ² − p` is part of `R` and is
//! swept at the same tolerance as the interior.

use rayon::prelude::*;

use super::{merge_rows, Check, VerificationReport};
use crate::error::{Error, Result};
use crate::scalar::{binary_entropy, entropy_unchecked};
use crate::tol;

fn symmetric_entropy(p: f64, g: f64) -> f64 {
    entropy_unchecked(&[p, g - p, g - p, 1.0 + p - 2.0 * g])
}

fn phi_unchecked(p: f64, g: f64, s: f64, t: f64) -> f64 {
    let (g1, g2) = (g + t, g - t);
    let joint = entropy_unchecked(&[p, g1 - p, g2 - p, 1.0 + p - g1 - g2]);
    joint - 0.5 * (symmetric_entropy(p + s, g1) + symmetric_entropy(p - s, g2))
}

/// `φ(s, t)`: entropy of the merged coupling minus the averaged entropies of the split ones.
///
/// Requires `max{0, 2γ−1} ≤ p ≤ γ²` and `(s, t) ∈ R(p, γ)`; otherwise the
/// error names the first violated constraint.
pub fn phi_split(p: f64, gamma: f64, s: f64, t: f64) -> Result<f64> {
    let e = tol::PROBABILITY_SLACK;
    let checks: [(bool, &'static str); 9] = [
        ((0.0..=1.0).contains(&gamma), "0 <= gamma <= 1"),
        (p >= (2.0 * gamma - 1.0).max(0.0) - e, "p >= max(0, 2 gamma - 1)"),
        (p <= gamma * gamma + e, "p <= gamma^2"),
        (s.abs() <= p + e, "|s| <= p"),
        (t.abs() <= gamma + e, "|t| <= gamma"),
        (t * t <= gamma * gamma - p + e, "t^2 <= gamma^2 - p"),
        (
            p + s >= (2.0 * (gamma + t) - 1.0).max(0.0) - e && p + s <= gamma + t + e,
            "max(0, 2(gamma + t) - 1) <= p + s <= gamma + t",
        ),
        (
            p - s >= (2.0 * (gamma - t) - 1.0).max(0.0) - e && p - s <= gamma - t + e,
            "max(0, 2(gamma - t) - 1) <= p - s <= gamma - t",
        ),
        (
            [p, gamma, s, t].iter().all(|x| x.is_finite()),
            "finite arguments",
        ),
    ];
    if let Some((_, name)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::OutOfRegion(name));
    }
    Ok(phi_unchecked(p, gamma, s, t))
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |i| {
        if n == 1 {
            lo
        } else if i == n - 1 {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

/// Feasible `s` for given `(p, γ, t)`, from the constraints defining `R`.
fn s_interval(p: f64, g: f64, t: f64) -> Option<(f64, f64)> {
    let lo = (-p)
        .max((2.0 * (g + t) - 1.0).max(0.0) - p)
        .max(p - (g - t));
    let hi = p
        .min(g + t - p)
        .min(p - (2.0 * (g - t) - 1.0).max(0.0));
    (lo <= hi).then_some((lo, hi))
}

/// Sweeps Statement 2 over `R(p, γ)` for one `(p, γ)`, feeding
/// `[region, symmetry, equality boundary]`.
fn sweep_region(p: f64, g: f64, n: usize, checks: &mut [Check]) {
    let radius = (g * g - p).max(0.0).sqrt().min(g);
    for t in linspace(-radius, radius, n) {
        let Some((s_lo, s_hi)) = s_interval(p, g, t) else {
            continue;
        };
        let on_boundary = t.abs() == radius && radius > 0.0;
        for s in linspace(s_lo, s_hi, n) {
            let v = phi_unchecked(p, g, s, t);
            let loc = [("p", p), ("gamma", g), ("s", s), ("t", t)];
            checks[0].observe(-v, &loc);
            if on_boundary {
                checks[2].observe(-v, &loc);
            }
            if s_interval(p, g, -t).is_some_and(|(a, b)| -s >= a && -s <= b) {
                checks[1].observe((v - phi_unchecked(p, g, -s, -t)).abs(), &loc);
            }
        }
    }
}

/// Verifies both splitting statements on grids with `density` points per axis.
///
/// Checks:
/// - `statement1`: the independence bound over all `(γ₁, γ₂, p₁, p₂)`;
/// - `statement2`: `φ ≥ −1e−10` over `(p, γ)` admissible and `(s, t) ∈ R`;
/// - `equality_boundary`: the `t² = γ² − p` part of that sweep;
/// - `symmetry`: `φ(s, t) = φ(−s, −t)`;
/// - `slice_gamma_half`, `slice_gamma_p_quarter`, `slice_p_zero`: the
///   degenerate one-parameter families `γ = ½`, `γ = p + ¼` and `p = 0`.
pub fn verify_entropy_splitting(density: usize) -> VerificationReport {
    let n = density.max(2);
    let slack = tol::PROVEN_SLACK;

    let rows: Vec<Vec<Check>> = linspace(0.0, 1.0, n)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|g1| {
            let mut c = Check::new("statement1", slack);
            for g2 in linspace(0.0, 1.0, n) {
                let bound = binary_entropy(g1) + binary_entropy(g2);
                for p1 in linspace((2.0 * g1 - 1.0).max(0.0), g1, n) {
                    let h1 = symmetric_entropy(p1, g1);
                    for p2 in linspace((2.0 * g2 - 1.0).max(0.0), g2, n) {
                        let avg = 0.5 * (h1 + symmetric_entropy(p2, g2));
                        c.observe(avg - bound, &[("gamma1", g1), ("gamma2", g2), ("p1", p1), ("p2", p2)]);
                    }
                }
            }
            vec![c]
        })
        .collect();
    let statement1 = merge_rows(rows, vec![Check::new("statement1", slack)]);

    let blank = || {
        vec![
            Check::new("statement2", slack),
            Check::new("symmetry", slack),
            Check::new("equality_boundary", slack),
        ]
    };
    let rows: Vec<Vec<Check>> = linspace(0.0, 1.0, n)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|g| {
            let mut row = blank();
            for p in linspace((2.0 * g - 1.0).max(0.0), g * g, n) {
                sweep_region(p, g, n, &mut row);
            }
            row
        })
        .collect();
    let statement2 = merge_rows(rows, blank());

    let slice = |name: &'static str, params: Vec<(f64, f64)>| {
        let rows: Vec<Vec<Check>> = params
            .into_par_iter()
            .map(|(p, g)| {
                let mut row = vec![Check::new(name, slack), Check::new("", 0.0), Check::new("", 0.0)];
                sweep_region(p, g, n, &mut row);
                row.truncate(1);
                row
            })
            .collect();
        merge_rows(rows, vec![Check::new(name, slack)])
    };
    let half = slice(
        "slice_gamma_half",
        linspace(0.0, 0.25, n).map(|p| (p, 0.5)).collect(),
    );
    let quarter = slice(
        "slice_gamma_p_quarter",
        linspace(0.25, 0.75, n).map(|g| (g - 0.25, g)).collect(),
    );
    let zero = slice(
        "slice_p_zero",
        linspace(0.0, 0.5, n).map(|g| (0.0, g)).collect(),
    );

    let checks = statement1
        .into_iter()
        .chain(statement2)
        .chain(half)
        .chain(quarter)
        .chain(zero)
        .map(Check::finish)
        .collect();
    let mut report = VerificationReport::from_checks("splitting", checks);
    report.notes.push(format!(
        "{n} points per axis; the equality boundary t^2 = gamma^2 - p is included at the interior tolerance"
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn phi_at_origin_is_zero() {
        for &(p, g) in &[(0.01, 0.2), (0.1, 0.4), (0.3, 0.6)] {
            assert_abs_diff_eq!(phi_split(p, g, 0.0, 0.0).unwrap(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn phi_on_equality_boundary_is_nonnegative() {
        let (p, g): (f64, f64) = (0.05, 0.3);
        let t = (g * g - p).sqrt();
        let (lo, hi) = s_interval(p, g, t).unwrap();
        for s in linspace(lo, hi, 11) {
            assert!(phi_split(p, g, s, t).unwrap() >= -1e-10);
        }
    }

    #[test]
    fn out_of_region_names_constraint() {
        assert_eq!(
            phi_split(0.05, 0.3, 0.0, 0.3),
            Err(Error::OutOfRegion("t^2 <= gamma^2 - p"))
        );
        assert_eq!(
            phi_split(0.05, 0.3, 0.06, 0.0),
            Err(Error::OutOfRegion("|s| <= p"))
        );
        assert_eq!(
            phi_split(0.2, 0.3, 0.0, 0.0),
            Err(Error::OutOfRegion("p <= gamma^2"))
        );
    }

    #[test]
    fn symmetric_points_agree() {
        let (p, g, s, t) = (0.04, 0.3, 0.01, 0.1);
        assert_abs_diff_eq!(
            phi_split(p, g, s, t).unwrap(),
            phi_split(p, g, -s, -t).unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn coarse_sweep_passes() {
        let r = verify_entropy_splitting(12);
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.checks.len(), 7);
        assert!(r.check("equality_boundary").unwrap().points_checked > 0);
    }
}
