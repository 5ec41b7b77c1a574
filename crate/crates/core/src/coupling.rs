//! Maximal-entropy 2×2 couplings under a cross-entropy tilt.
//!
//! A coupling of marginals `(γ₁, γ₂)` has one free cell `p`:
//!
//! ```text
//! [ p        γ₁ − p          ]
//! [ γ₂ − p   1 + p − γ₁ − γ₂ ]
//! ```
//!
//! The objective `f(γ₁, γ₂, p)` adds `s` times the cross entropy against
//! DSBS(ε) to the coupling's own entropy. Up to a constant in `p` it equals
//! `H(cells) + (γ₁ + γ₂ − 2p)·½ log κ`, which is what the oracle maximizes.
//! The closed-form maximizer [`p_star_general`] is checked against an
//! independent golden-section search ([`coupling_oracle`]).

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dsbs::{a_of, stationary_cell, Kappa};
use crate::error::{check_range, Error, Result};
use crate::scalar::{binary_entropy, entropy_unchecked, Bits, LN_2};
use crate::solve::golden_max_by;
use crate::tol;

/// A 2×2 coupling, parameterized by its `(0, 0)` cell and its marginals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coupling2x2 {
    pub p: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl Coupling2x2 {
    /// Rejects `p` outside `[max{0, γ₁+γ₂−1}, min{γ₁, γ₂}]` by more than the probability slack.
    pub fn new(p: f64, gamma1: f64, gamma2: f64) -> Result<Self> {
        check_marginals(gamma1, gamma2)?;
        let (lo, hi) = feasible_interval(gamma1, gamma2);
        let slack = tol::PROBABILITY_SLACK;
        if p.is_nan() || p < lo - slack || p > hi + slack {
            return Err(Error::Domain {
                name: "p",
                value: p,
                expected: "[max(0, g1+g2-1), min(g1, g2)]",
            });
        }
        Ok(Self {
            p: p.clamp(lo, hi),
            gamma1,
            gamma2,
        })
    }

    /// `(p, γ₁−p, γ₂−p, 1+p−γ₁−γ₂)`.
    pub fn cells(&self) -> [f64; 4] {
        cells(self.p, self.gamma1, self.gamma2)
    }

    pub fn entropy(&self) -> Bits {
        entropy_unchecked(&self.cells())
    }
}

fn cells(p: f64, g1: f64, g2: f64) -> [f64; 4] {
    [p, g1 - p, g2 - p, 1.0 + p - g1 - g2]
}

fn check_marginals(g1: f64, g2: f64) -> Result<()> {
    check_range("gamma1", g1, 0.0, 1.0, "[0, 1]")?;
    check_range("gamma2", g2, 0.0, 1.0, "[0, 1]")?;
    Ok(())
}

/// Feasible range of the free cell.
pub fn feasible_interval(g1: f64, g2: f64) -> (f64, f64) {
    ((g1 + g2 - 1.0).max(0.0), g1.min(g2))
}

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

/// `f(γ₁,γ₂,p) = H(cells) − s(1+2p−γ₁−γ₂)log((1−ε)/2) − s(γ₁+γ₂−2p)log(ε/2)`.
pub fn f_objective(c: Coupling2x2, eps: f64, s: f64) -> Result<Bits> {
    let eps = check_eps_open(eps)?;
    if s.is_nan() || s <= 0.0 {
        return Err(Error::Domain {
            name: "s",
            value: s,
            expected: "(0, inf)",
        });
    }
    let Coupling2x2 { p, gamma1, gamma2 } = c;
    Ok(c.entropy()
        - s * (1.0 + 2.0 * p - gamma1 - gamma2) * ((1.0 - eps) / 2.0).log2()
        - s * (gamma1 + gamma2 - 2.0 * p) * (eps / 2.0).log2())
}

/// `H(cells) + (γ₁+γ₂−2p)·½ log κ`, the `p`-dependent part of `f`.
pub fn kappa_objective(c: Coupling2x2, kappa: Kappa) -> Bits {
    let off = c.gamma1 + c.gamma2 - 2.0 * c.p;
    let tilt = if off == 0.0 { 0.0 } else { off * 0.5 * kappa.log2() };
    c.entropy() + tilt
}

/// Closed-form maximizer of `p ↦ f(γ₁, γ₂, p)`.
///
/// Equal to `γ₁γ₂` at `κ = 1` and to `max{0, γ₁+γ₂−1}` at `κ = ∞`. The root
/// taken is the one of the stationarity quadratic that lies in the feasible
/// interval for every `(γ₁, γ₂) ∈ [0,1]²`.
pub fn p_star_general(gamma1: f64, gamma2: f64, kappa: Kappa) -> Result<f64> {
    check_marginals(gamma1, gamma2)?;
    Ok(stationary_cell(gamma1, gamma2, kappa))
}

/// `xl(c+δ) − xl(c)` without cancellation, `xl(x) = x log x`.
fn xlogx_step(c: f64, delta: f64) -> f64 {
    let c = c.max(0.0);
    let next = c + delta;
    if next <= 0.0 {
        return -crate::scalar::xlogx(c);
    }
    if c == 0.0 {
        return crate::scalar::xlogx(next);
    }
    delta * next.log2() + c * (delta / c).ln_1p() / LN_2
}

/// `φ(y) − φ(x)` for `φ(p) = kappa_objective`, evaluated cell by cell.
fn objective_step(x: f64, y: f64, g1: f64, g2: f64, log2_kappa: f64) -> f64 {
    if x > y {
        return -objective_step(y, x, g1, g2, log2_kappa);
    }
    let d = y - x;
    let base = cells(x, g1, g2);
    let signs = [1.0, -1.0, -1.0, 1.0];
    let entropy_change: f64 = base
        .iter()
        .zip(signs)
        .map(|(&c, sgn)| -xlogx_step(c, sgn * d))
        .sum();
    let tilt = if log2_kappa == 0.0 { 0.0 } else { -d * log2_kappa };
    entropy_change + tilt
}

fn oracle_argmax(g1: f64, g2: f64, log2_kappa: f64) -> f64 {
    let (lo, hi) = feasible_interval(g1, g2);
    if hi - lo < tol::SINGLETON_WIDTH {
        return lo;
    }
    let cmp = |x: f64, y: f64| {
        objective_step(x, y, g1, g2, log2_kappa)
            .partial_cmp(&0.0)
            .unwrap_or(Ordering::Equal)
    };
    let mut best = golden_max_by(cmp, lo, hi, tol::ORACLE_WIDTH);
    for end in [lo, hi] {
        if cmp(best, end) == Ordering::Greater {
            best = end;
        }
    }
    best
}

/// Golden-section maximization of `f` over the feasible interval; returns `(argmax, max)`.
///
/// Does not use the stationarity equation. Intervals narrower than
/// [`tol::SINGLETON_WIDTH`] are treated as a single point.
pub fn coupling_oracle(gamma1: f64, gamma2: f64, eps: f64, s: f64) -> Result<(f64, Bits)> {
    check_marginals(gamma1, gamma2)?;
    let kappa = Kappa::from_eps_s(check_eps_open(eps)?, s)?;
    let p = oracle_argmax(gamma1, gamma2, kappa.log2());
    let value = f_objective(Coupling2x2::new(p, gamma1, gamma2)?, eps, s)?;
    Ok((p, value))
}

/// Golden-section maximization of [`kappa_objective`] at a given `κ`; returns `(argmax, max)`.
pub fn coupling_oracle_kappa(gamma1: f64, gamma2: f64, kappa: Kappa) -> Result<(f64, Bits)> {
    check_marginals(gamma1, gamma2)?;
    let p = oracle_argmax(gamma1, gamma2, kappa.log2());
    Ok((p, kappa_objective(Coupling2x2::new(p, gamma1, gamma2)?, kappa)))
}

/// `g(γ₁, γ₂) = max_p f(γ₁, γ₂, p)` from the closed-form maximizer.
pub fn g_max(gamma1: f64, gamma2: f64, eps: f64, s: f64) -> Result<Bits> {
    let kappa = Kappa::from_eps_s(check_eps_open(eps)?, s)?;
    let p = p_star_general(gamma1, gamma2, kappa)?;
    f_objective(Coupling2x2::new(p, gamma1, gamma2)?, eps, s)
}

/// Upper bound on the order-`(1+s)` common information from the construction
/// `X = W⊕U`, `Y = W⊕V` with `U, V ~ Bern(a)`.
///
/// Evaluates `−((1+s)/s)·2H(a) + (1/s)·g(a, a)`, where `g(a, a)` is the
/// maximal tilted coupling entropy of the two conditionals.
pub fn gamma_ub_super1(eps: f64, s: f64) -> Result<Bits> {
    let eps = check_eps_open(eps)?;
    let a = a_of(eps);
    let g = g_max(a, a, eps, s)?;
    Ok(-(1.0 + s) / s * 2.0 * binary_entropy(a) + g / s)
}

/// Worst disagreement found by [`validate_random_triples`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TripleSweep {
    pub samples: usize,
    pub seed: u64,
    pub max_argmax_error: f64,
    pub max_objective_gap: f64,
    /// `(γ₁, γ₂, κ)` at the largest argmax error.
    pub worst: (f64, f64, f64),
}

/// Compares [`p_star_general`] with [`coupling_oracle_kappa`] on seeded random triples.
///
/// `γ₁, γ₂ ~ U[0,1)` and `log₁₀ κ ~ U[0,6)`, drawn from ChaCha8 seeded with `seed`.
/// The objective gap is `|φ(oracle) − φ(closed form)|`, computed as a
/// cancellation-free difference.
pub fn validate_random_triples(samples: usize, seed: u64) -> TripleSweep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sweep = TripleSweep {
        samples,
        seed,
        max_argmax_error: 0.0,
        max_objective_gap: 0.0,
        worst: (0.0, 0.0, 1.0),
    };
    for _ in 0..samples {
        let g1: f64 = rng.gen();
        let g2: f64 = rng.gen();
        let kappa = Kappa::from_ln(rng.gen::<f64>() * 6.0 * std::f64::consts::LN_10)
            .expect("nonnegative log");
        let closed = stationary_cell(g1, g2, kappa);
        let oracle = oracle_argmax(g1, g2, kappa.log2());
        let err = (closed - oracle).abs();
        let gap = objective_step(closed, oracle, g1, g2, kappa.log2()).abs();
        if err > sweep.max_argmax_error {
            sweep.max_argmax_error = err;
            sweep.worst = (g1, g2, kappa.value());
        }
        sweep.max_objective_gap = sweep.max_objective_gap.max(gap);
    }
    sweep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsbs::{p_star, renyi_ci, wyner_ci, Order};
    use approx::assert_abs_diff_eq;

    #[test]
    fn coupling_validation() {
        let c = Coupling2x2::new(0.1, 0.3, 0.4).unwrap();
        assert_eq!(c.cells(), [0.1, 0.19999999999999998, 0.30000000000000004, 0.4]);
        assert!(Coupling2x2::new(0.5, 0.3, 0.4).is_err());
        assert!(Coupling2x2::new(0.0, 0.7, 0.6).is_err());
        assert!(Coupling2x2::new(0.3, 0.7, 0.6).is_ok());
    }

    #[test]
    fn objective_is_symmetric_and_finite_on_boundary() {
        let a = f_objective(Coupling2x2::new(0.1, 0.3, 0.4).unwrap(), 0.2, 1.5).unwrap();
        let b = f_objective(Coupling2x2::new(0.1, 0.4, 0.3).unwrap(), 0.2, 1.5).unwrap();
        assert_eq!(a, b);
        let edge = f_objective(Coupling2x2::new(0.3, 0.3, 0.4).unwrap(), 0.2, 1.5).unwrap();
        assert!(edge.is_finite());
    }

    #[test]
    fn closed_form_limits() {
        let one = Kappa::new(1.0 + 1e-9).unwrap();
        assert_abs_diff_eq!(p_star_general(0.3, 0.6, one).unwrap(), 0.18, epsilon = 1e-9);
        let (p, _) = coupling_oracle_kappa(0.3, 0.6, one).unwrap();
        assert_abs_diff_eq!(p, 0.18, epsilon = 1e-9);
        let big = Kappa::new(1e12).unwrap();
        assert!(p_star_general(0.3, 0.6, big).unwrap() < 1e-11);
        assert_abs_diff_eq!(p_star_general(0.8, 0.6, big).unwrap(), 0.4, epsilon = 1e-12);
        let k = Kappa::new(7.0).unwrap();
        assert_eq!(
            p_star_general(0.2, 0.7, k).unwrap(),
            p_star_general(0.7, 0.2, k).unwrap()
        );
    }

    #[test]
    fn closed_form_matches_dsbs_p_star() {
        let a = a_of(0.3);
        for &s in &[0.1, 1.0, 5.0] {
            let k = Kappa::from_eps_s(0.3, s).unwrap();
            assert_eq!(p_star_general(a, a, k).unwrap(), p_star(0.3, s).unwrap());
            let (p, _) = coupling_oracle(a, a, 0.3, s).unwrap();
            assert_abs_diff_eq!(p, p_star(0.3, s).unwrap(), epsilon = 1e-9);
        }
    }

    #[test]
    fn oracle_on_degenerate_marginals() {
        let (p, v) = coupling_oracle(0.0, 0.4, 0.3, 1.0).unwrap();
        assert_eq!(p, 0.0);
        let only = f_objective(Coupling2x2::new(0.0, 0.0, 0.4).unwrap(), 0.3, 1.0).unwrap();
        assert_eq!(v, only);
    }

    #[test]
    fn g_reflection() {
        for &(g1, g2) in &[(0.2, 0.35), (0.1, 0.9), (0.45, 0.45)] {
            let a = g_max(g1, g2, 0.3, 2.0).unwrap();
            let b = g_max(1.0 - g1, 1.0 - g2, 0.3, 2.0).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn upper_bound_construction_matches_closed_form() {
        for &eps in &[0.05, 0.2, 0.3, 0.45] {
            for &s in &[0.01, 0.5, 1.0, 10.0] {
                let ub = gamma_ub_super1(eps, s).unwrap();
                let cf = renyi_ci(eps, Order::new(1.0 + s).unwrap()).unwrap().value;
                assert_abs_diff_eq!(ub, cf, epsilon = 1e-9);
            }
        }
        assert_abs_diff_eq!(gamma_ub_super1(0.5, 1.0).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            gamma_ub_super1(0.3, 1e-6).unwrap(),
            wyner_ci(0.3).unwrap(),
            epsilon = 1e-4
        );
    }

    #[test]
    fn random_triples_agree() {
        let sweep = validate_random_triples(200, 7);
        assert!(sweep.max_argmax_error <= 1e-9, "{sweep:?}");
        assert!(sweep.max_objective_gap <= 1e-12, "{sweep:?}");
    }
}
