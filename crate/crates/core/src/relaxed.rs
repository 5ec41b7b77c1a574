//! Relaxed Wyner common information `C(r, t)` of DSBS(r).
//!
//! `C(r, t) = inf I(XY; W)` subject to `I(X; Y | W) ≤ t`. For `t < 1 − H(r)`
//! the optimum is `(1−r)(1 − H(q))`, where `q ∈ [q₀, ½]` solves
//!
//! ```text
//! 2H((1−r)q + r/2) − (1−r)H(q) − r − H(r) = t
//! ```
//!
//! and it is 0 otherwise. The optimum is attained by the channel
//! `W = X ⊕ Z`, `Z ~ Bern(q)`, when `X = Y` and `W ~ Bern(½)` when `X ≠ Y`.
//! The witness also carries `b` with `b ∗ b = r` and `b₀ = (q−b)/(1−2b)`;
//! `b₀` is negative whenever `q < b`, so it is reported but not used.
//!
//! [`brute_force_relaxed_ci`] minimizes over a grid of all binary-`W`
//! channels and serves as an independent oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dsbs::a_of;
use crate::error::{check_range, Error, Result};
use crate::scalar::{binary_entropy, divergence_kernel, xlogx, Bits};
use crate::solve::{brent, scan_brackets};
use crate::tol;

fn check_r(r: f64) -> Result<f64> {
    check_range("r", r, 0.0, 0.5, "[0, 1/2]")
}

fn check_t(t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::Domain {
            name: "t",
            value: t,
            expected: "[0, inf)",
        });
    }
    Ok(t)
}

/// `q₀ = (1−√(1−2r))² / (4(1−r))`, the point where the conditional mutual information vanishes.
///
/// Equal to `b²/(1−r)` with `b ∗ b = r`; `½` at `r = ½`.
pub fn q0(r: f64) -> Result<f64> {
    let r = check_r(r)?;
    Ok(q0_unchecked(r))
}

fn q0_unchecked(r: f64) -> f64 {
    let b = a_of(r);
    b * b / (1.0 - r)
}

/// Written as `Σ mᵢⱼ·k(δᵢⱼ)/ln 2` over the 2×2 table given `W = 0`, with
/// `δᵢⱼ = ±det/mᵢⱼ` and `det = (1−r)²(q−q₀)(1−q−q₀)`, so that it stays
/// accurate as `q → q₀`.
fn cmi_unchecked(r: f64, q: f64) -> Bits {
    let rb = 1.0 - r;
    let det = rb * rb * (q - q0_unchecked(r)) * (1.0 - q - q0_unchecked(r));
    let x1 = rb * q + 0.5 * r;
    let x0 = 1.0 - x1;
    let cells = [(x0 * x0, det), (x1 * x1, det), (x0 * x1, -det), (x0 * x1, -det)];
    cells
        .iter()
        .map(|&(m, d)| if m > 0.0 { m * divergence_kernel(d / m) } else { 0.0 })
        .sum::<f64>()
        / std::f64::consts::LN_2
}

/// `I(X; Y | W)` of the binary construction with parameter `q`:
/// `2H((1−r)q + r/2) − (1−r)H(q) − r − H(r)`.
pub fn conditional_mi(r: f64, q: f64) -> Result<Bits> {
    let r = check_r(r)?;
    let lo = q0_unchecked(r);
    let slack = tol::PROBABILITY_SLACK;
    if q.is_nan() || q < lo - slack || q > 0.5 + slack {
        return Err(Error::Domain {
            name: "q",
            value: q,
            expected: "[q0(r), 1/2]",
        });
    }
    Ok(cmi_unchecked(r, q.clamp(lo, 0.5)))
}

/// Solution of the relaxed problem together with its optimal construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelaxedCiWitness {
    /// Crossover actually solved for, in `[0, ½]`.
    pub r: f64,
    /// Whether the input crossover was `1 − r`.
    pub reflected: bool,
    pub t: Bits,
    pub q: f64,
    /// `b` with `b ∗ b = r`.
    pub b: f64,
    /// `(q − b)/(1 − 2b)`, so that `q = b₀ ∗ b`; may be negative.
    pub b0: f64,
    pub value: Bits,
    /// Sign-change brackets found by the scan; 1 when the root is unique.
    pub brackets: usize,
}

/// `C(r, t)`; inputs `r > ½` are mapped to `1 − r`.
pub fn relaxed_ci(r: f64, t: f64) -> Result<RelaxedCiWitness> {
    let r_in = check_range("r", r, 0.0, 1.0, "[0, 1]")?;
    let t = check_t(t)?;
    let reflected = r_in > 0.5;
    let r = if reflected { 1.0 - r_in } else { r_in };
    let b = a_of(r);
    let witness = |q: f64, value: f64, brackets: usize| {
        let b0 = if r == 0.5 { 0.5 } else { (q - b) / (1.0 - 2.0 * b) };
        RelaxedCiWitness {
            r,
            reflected,
            t,
            q,
            b,
            b0,
            value,
            brackets,
        }
    };

    if t >= 1.0 - binary_entropy(r) {
        return Ok(witness(0.5, 0.0, 0));
    }
    let lo = q0_unchecked(r);
    let f = |q: f64| cmi_unchecked(r, q) - t;
    let f_lo = f(lo);
    if f_lo >= 0.0 {
        return Ok(witness(lo, value_at(r, lo), 1));
    }
    let brackets = scan_brackets(f, lo, 0.5, tol::ROOT_SCAN);
    let Some(&(x0, x1)) = brackets.first() else {
        return Err(Error::NotBracketed {
            lo,
            hi: 0.5,
            f_lo,
            f_hi: f(0.5),
        });
    };
    let q = if x0 == x1 { x0 } else { brent(f, x0, x1)? };
    let residual = f(q).abs();
    if residual > tol::ROOT_RESIDUAL {
        return Err(Error::Residual {
            x: q,
            residual,
            tolerance: tol::ROOT_RESIDUAL,
        });
    }
    Ok(witness(q, value_at(r, q), brackets.len()))
}

fn value_at(r: f64, q: f64) -> Bits {
    ((1.0 - r) * (1.0 - binary_entropy(q))).max(0.0)
}

/// Grid minimum found by [`brute_force_relaxed_ci`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BruteForce {
    pub value: Bits,
    /// `P(W = 0 | X = x, Y = y)` for `xy = 00, 01, 10, 11` at the minimum.
    pub channel: [f64; 4],
    pub grid_step: f64,
    pub feasible_points: u64,
}

/// `(I(XY; W), I(X; Y | W))` for DSBS(r) and the binary channel `w0[xy] = P(W=0 | xy)`.
pub fn channel_information(r: f64, w0: [f64; 4]) -> (Bits, Bits) {
    let pxy = [(1.0 - r) / 2.0, r / 2.0, r / 2.0, (1.0 - r) / 2.0];
    let h_xy = -pxy.iter().map(|&p| xlogx(p)).sum::<f64>();
    let mut h_w = 0.0;
    let mut h_xyw = 0.0;
    let mut h_xw_yw = 0.0;
    for side in [false, true] {
        let joint: [f64; 4] =
            std::array::from_fn(|i| pxy[i] * if side { 1.0 - w0[i] } else { w0[i] });
        let pw = joint.iter().sum::<f64>();
        h_w -= xlogx(pw);
        h_xyw -= joint.iter().map(|&p| xlogx(p)).sum::<f64>();
        h_xw_yw -= xlogx(joint[0] + joint[1]) + xlogx(joint[2] + joint[3]);
        h_xw_yw -= xlogx(joint[0] + joint[2]) + xlogx(joint[1] + joint[3]);
    }
    let i_xy_w = h_xy + h_w - h_xyw;
    let i_x_y_given_w = h_xw_yw - h_xyw - h_w;
    (i_xy_w, i_x_y_given_w)
}

/// Minimum of `I(XY; W)` over binary-`W` channels on a grid of step `grid_step`,
/// subject to `I(X; Y | W) ≤ t` (plus [`tol::BRUTE_FEASIBILITY`]).
///
/// The grid has `(1/step + 1)⁴` points, so steps much below 0.01 are slow.
/// The reduction is deterministic: ties go to the lexicographically first
/// grid index.
pub fn brute_force_relaxed_ci(r: f64, t: f64, grid_step: f64) -> Result<BruteForce> {
    let r = check_r(r)?;
    let t = check_t(t)?;
    let step = check_range("grid_step", grid_step, 1e-3, 0.1, "[1e-3, 0.1]")?;
    let n = (1.0 / step).round() as usize;
    let axis: Vec<f64> = (0..=n).map(|i| (i as f64 / n as f64).min(1.0)).collect();
    let m = axis.len();
    let limit = t + tol::BRUTE_FEASIBILITY;

    let best = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut best: Option<(f64, [usize; 4])> = None;
            let mut feasible = 0u64;
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let w = [axis[i], axis[j], axis[k], axis[l]];
                        let (rate, cond) = channel_information(r, w);
                        if cond <= limit {
                            feasible += 1;
                            if best.map_or(true, |(v, _)| rate < v) {
                                best = Some((rate, [i, j, k, l]));
                            }
                        }
                    }
                }
            }
            (best, feasible)
        })
        .reduce(
            || (None, 0),
            |(a, fa), (b, fb)| {
                let pick = match (a, b) {
                    (Some(x), Some(y)) => {
                        if y.0 < x.0 || (y.0 == x.0 && y.1 < x.1) {
                            Some(y)
                        } else {
                            Some(x)
                        }
                    }
                    (x, None) => x,
                    (None, y) => y,
                };
                (pick, fa + fb)
            },
        );

    let (Some((value, idx)), feasible_points) = best else {
        return Err(Error::EmptyFeasibleSet);
    };
    Ok(BruteForce {
        value: value.max(0.0),
        channel: idx.map(|i| axis[i]),
        grid_step: step,
        feasible_points,
    })
}

/// One `(r, t)` comparison between the closed form and the grid oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichPoint {
    pub r: f64,
    pub t: Bits,
    pub closed_form: Bits,
    pub brute_force: Bits,
    /// `brute_force − closed_form`.
    pub gap: Bits,
}

/// Draws `pairs` seeded `(r, t)` pairs and evaluates both sides.
///
/// `r ~ U[0, ½)` and `t = u·(1 − H(r))` with `u ~ U[0, 1)`, from ChaCha8 seeded with `seed`.
pub fn oracle_sandwich(pairs: usize, grid_step: f64, seed: u64) -> Result<Vec<SandwichPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<(f64, f64)> = (0..pairs)
        .map(|_| {
            let r = 0.5 * rng.gen::<f64>();
            let u: f64 = rng.gen();
            (r, u * (1.0 - binary_entropy(r)))
        })
        .collect();
    draws
        .into_iter()
        .map(|(r, t)| {
            let closed_form = relaxed_ci(r, t)?.value;
            let brute_force = brute_force_relaxed_ci(r, t, grid_step)?.value;
            Ok(SandwichPoint {
                r,
                t,
                closed_form,
                brute_force,
                gap: brute_force - closed_form,
            })
        })
        .collect()
}
