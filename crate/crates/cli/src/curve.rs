//! The `curve` command: `T_α(ε)` over a grid of orders, as CSV.

use renyi_ci::negative::{condition1_holds, gamma_ub_negative};
use renyi_ci::tol::CONDITION1_GRID;
use renyi_ci::{renyi_ci, wyner_ci, Error, Order, Regime, Result};
use serde::Serialize;

use crate::output::fmt_sig;

/// One CSV row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub alpha: Order,
    pub gamma_bits: f64,
    pub regime: Regime,
}

/// Orders of a curve on `[alpha_min, alpha_max]`.
///
/// `α − 1` is log-spaced on the super-1 side from `1e−3` and `|α|` on the
/// negative side down to `1e−2` (or `|alpha_max|`); the negative side gets a
/// third of `points` when present. Sentinels `0`, `1`, `inf` (and `−inf` with a negative
/// side) are always included. Sorted ascending, duplicates removed.
pub fn alpha_grid(alpha_min: f64, alpha_max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Domain {
            name: "points",
            value: points as f64,
            expected: "at least 2",
        });
    }
    if !(alpha_min < alpha_max && alpha_min.is_finite() && alpha_max.is_finite()) {
        return Err(Error::Domain {
            name: "alpha_max",
            value: alpha_max,
            expected: "finite and greater than alpha_min",
        });
    }
    let logspace = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
        if n == 0 || lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
            return Vec::new();
        }
        if n == 1 {
            return vec![hi];
        }
        let (a, b) = (lo.ln(), hi.ln());
        (0..n)
            .map(|i| match i {
                0 => lo,
                i if i == n - 1 => hi,
                i => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
            })
            .collect()
    };

    let n_neg = if alpha_min < 0.0 { points / 3 } else { 0 };
    let n_pos = points - n_neg;
    let mut grid = vec![0.0, 1.0, f64::INFINITY];
    if alpha_min < 0.0 {
        grid.push(f64::NEG_INFINITY);
        let hi = -alpha_min;
        let lo = if alpha_max < 0.0 { -alpha_max } else { 1e-2f64.min(hi) };
        grid.extend(logspace(lo, hi, n_neg).into_iter().map(|m| -m));
    }
    if alpha_max > 1.0 {
        let hi = alpha_max - 1.0;
        grid.extend(logspace(1e-3f64.min(hi), hi, n_pos).into_iter().map(|d| 1.0 + d));
    }
    grid.sort_by(|a, b| a.total_cmp(b));
    grid.dedup();
    Ok(grid)
}

/// Rows of the curve at `ε`.
///
/// Negative orders report Wyner's value when Condition 1 holds at `ε` and
/// the upper bound otherwise; the regime is `negative-ub` either way.
pub fn curve_rows(eps: f64, alphas: &[f64]) -> Result<Vec<CurveRow>> {
    let mut negative_exact = None;
    alphas
        .iter()
        .map(|&a| {
            let order = Order::new(a)?;
            let gamma_bits = if order.is_negative() && eps > 0.0 && eps < 0.5 {
                let holds = match negative_exact {
                    Some(h) => h,
                    None => *negative_exact.insert(condition1_holds(eps, CONDITION1_GRID)?.holds),
                };
                if holds {
                    wyner_ci(eps)?
                } else {
                    gamma_ub_negative(eps, order)?.value
                }
            } else {
                renyi_ci(eps, order)?.value
            };
            Ok(CurveRow {
                alpha: order,
                gamma_bits,
                regime: order.regime(),
            })
        })
        .collect()
}

/// CSV text with header `alpha,gamma_bits,regime` and LF line endings.
pub fn to_csv(rows: &[CurveRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(["alpha", "gamma_bits", "regime"]).expect("in-memory write");
    for r in rows {
        w.write_record([fmt_sig(r.alpha.alpha()), fmt_sig(r.gamma_bits), r.regime.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
