//! The chain of sufficient conditions behind Condition 1, checked link by link.
//!
//! | link                     | premise (pointwise)            | conclusion           |
//! |--------------------------|--------------------------------|----------------------|
//! | `omega_implies_lhs`      | `ω(ε, t²) ≤ 0`                 | `chain_lhs(t) ≤ 0`   |
//! | `lhs_implies_derivative` | `chain_lhs(t) ≤ 0`             | `g′(t) ≤ 0`          |
//! | `derivative_implies_lhs` | `g′(t) ≤ 0`                    | `chain_lhs(t) ≤ 0`   |
//! | `derivative_implies_g`   | `g′ ≤ 0` on `[t, c]`           | `g(t) ≥ 0`           |
//!
//! The first link is swept over `t ∈ [0, c]`; the others over `[t₁, c]`,
//! the image of `r ∈ [0, ε]`, where `g` is defined. A link is broken when its
//! premise holds at a point and its conclusion fails there by more than
//! 1e−8. The suite also checks `g(c) = 0` and the displayed `g′` against a
//! finite difference of `g`.

use serde::Serialize;

use super::{fd_step, relative_gap, richardson, Check, VerificationReport};
use crate::dsbs::DsbsParams;
use crate::error::Result;
use crate::negative::{chain_lhs, g_condition, g_condition_derivative, omega, t_lower};
use crate::tol;

/// Overall verdict of [`verify_condition_chain`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainStatus {
    /// Every premise held everywhere and every conclusion followed.
    AllHold,
    /// Some premise failed somewhere; wherever a premise held, its conclusion followed.
    PremiseFalse,
    /// A premise held and its conclusion failed.
    Broken,
}

const LINK_SLACK: f64 = tol::SHAPE_SLACK;

struct Link {
    check: Check,
    premise_failures: u64,
}

impl Link {
    fn new(name: &'static str) -> Self {
        Self {
            check: Check::new(name, LINK_SLACK),
            premise_failures: 0,
        }
    }

    /// `conclusion_violation > 0` means the conclusion fails by that much.
    fn observe(&mut self, premise: bool, conclusion_violation: f64, loc: &[(&'static str, f64)]) {
        if premise {
            self.check.observe(conclusion_violation, loc);
        } else {
            self.premise_failures += 1;
        }
    }
}

/// Verifies the chain at `ε` with `grid` points on each `t` range.
pub fn verify_condition_chain(eps: f64, grid: usize) -> Result<VerificationReport> {
    let p = DsbsParams::new(eps)?;
    let grid = grid.max(3);
    let c = p.c_len;
    let t1 = t_lower(eps)?;
    let at = |lo: f64, hi: f64, i: usize| {
        if i == grid - 1 {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (grid - 1) as f64
        }
    };

    let mut omega_link = Link::new("omega_implies_lhs");
    for i in 0..grid {
        let t = at(0.0, c, i);
        let w = omega(eps, (t * t).min(crate::negative::s_range_end(eps)))?;
        omega_link.observe(w <= 0.0, chain_lhs(t, eps)?, &[("t", t)]);
    }

    let ts: Vec<f64> = (0..grid).map(|i| at(t1, c, i)).collect();
    let lhs: Vec<f64> = ts.iter().map(|&t| chain_lhs(t, eps)).collect::<Result<_>>()?;
    let d1: Vec<f64> = ts
        .iter()
        .map(|&t| g_condition_derivative(t, eps))
        .collect::<Result<_>>()?;
    let g: Vec<f64> = ts.iter().map(|&t| g_condition(t, eps)).collect::<Result<_>>()?;

    let mut forward = Link::new("lhs_implies_derivative");
    let mut backward = Link::new("derivative_implies_lhs");
    let mut integral = Link::new("derivative_implies_g");
    let mut fd = Check::new("g_prime_fd", tol::FD_RELATIVE);
    let mut suffix_max = f64::NEG_INFINITY;
    for i in (0..grid).rev() {
        let t = ts[i];
        let loc = [("t", t)];
        forward.observe(lhs[i] <= 0.0, d1[i], &loc);
        backward.observe(d1[i] <= 0.0, lhs[i], &loc);
        suffix_max = suffix_max.max(d1[i]);
        integral.observe(suffix_max <= 0.0, -g[i], &loc);

        let h = fd_step(t);
        if t - h < t1 || t + h > c {
            fd.skip();
        } else {
            let num = richardson(|x| g_condition(x, eps).unwrap_or(f64::NAN), t, h);
            fd.observe(relative_gap(d1[i], num, tol::FD_SCALE_FLOOR), &loc);
        }
    }
    let mut at_c = Check::new("g_at_c", tol::EQUALITY);
    at_c.observe(g_condition(c, eps)?.abs(), &[("t", c)]);

    let links = [omega_link, forward, backward, integral];
    let broken = links.iter().any(|l| !l.check.clone().finish().pass);
    let premise_false = links.iter().any(|l| l.premise_failures > 0);
    let status = if broken {
        ChainStatus::Broken
    } else if premise_false {
        ChainStatus::PremiseFalse
    } else {
        ChainStatus::AllHold
    };
    let mut notes: Vec<String> = links
        .iter()
        .filter(|l| l.premise_failures > 0)
        .map(|l| {
            format!(
                "{}: premise false at {} of {} points",
                l.check.clone().finish().name,
                l.premise_failures,
                l.premise_failures + l.check.clone().finish().points_checked
            )
        })
        .collect();
    notes.insert(0, format!("epsilon {eps}, t1 {t1}, c {c}, {grid} points per range"));

    let checks = links
        .into_iter()
        .map(|l| l.check)
        .chain([fd, at_c])
        .map(Check::finish)
        .collect();
    let mut report = VerificationReport::from_checks("chain", checks);
    report.pass = report.pass && status != ChainStatus::Broken;
    report.status = Some(status);
    report.notes = notes;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_above_threshold() {
        let r = verify_condition_chain(0.3, 400).unwrap();
        assert_eq!(r.status, Some(ChainStatus::AllHold), "{r:#?}");
        assert!(r.pass);
    }

    #[test]
    fn premise_false_below_threshold() {
        let r = verify_condition_chain(0.03, 400).unwrap();
        assert_eq!(r.status, Some(ChainStatus::PremiseFalse), "{r:#?}");
        assert!(r.pass);
    }
}
