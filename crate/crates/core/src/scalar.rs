//! Binary information-theoretic scalars, in bits.
//!
//! Every function here uses base-2 logarithms and the convention
//! `0 · log 0 = 0`, applied as an exact limit (no floor constant). Arguments
//! are plain `f64`s so the kernels compose cheaply inside sweeps; use
//! [`Probability`] to validate values that come from outside.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tol;

/// A quantity measured in bits.
pub type Bits = f64;

pub(crate) const LN_2: f64 = std::f64::consts::LN_2;

/// A real number in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    /// Validates `value`, clamping excursions of at most [`tol::PROBABILITY_SLACK`].
    pub fn new(value: f64) -> Result<Self> {
        let slack = tol::PROBABILITY_SLACK;
        if value.is_nan() || value < -slack || value > 1.0 + slack {
            return Err(Error::Domain {
                name: "probability",
                value,
                expected: "[0, 1]",
            });
        }
        Ok(Self(value.clamp(0.0, 1.0)))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `1 - p`.
    pub fn complement(self) -> Self {
        Self(1.0 - self.0)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// `log2(x)`.
#[inline]
pub fn log2(x: f64) -> f64 {
    x.log2()
}

/// `log2(1 + x)`, accurate for small `x`.
#[inline]
pub fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / LN_2
}

/// `x log2 x` with the limit value 0 at `x = 0`.
///
/// Non-positive inputs return 0 so that cells which should vanish but carry
/// a rounding residue (`-1e-17`) do not produce NaN.
#[inline]
pub fn xlogx(x: f64) -> Bits {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Binary entropy `H(a) = -a log a - (1-a) log (1-a)`.
#[inline]
pub fn binary_entropy(a: f64) -> Bits {
    -xlogx(a) - xlogx(1.0 - a)
}

/// Binary relative entropy `D(a‖b)`; `+∞` when `a` puts mass where `b` has none.
///
/// Evaluated as `[b·k((a−b)/b) + b̄·k((b−a)/b̄)]/ln 2` with
/// `k(δ) = (1+δ)ln(1+δ) − δ`, which keeps full relative accuracy as `a → b`.
pub fn binary_relative_entropy(a: f64, b: f64) -> Bits {
    let (bb, d) = (1.0 - b, a - b);
    if (b <= 0.0 && a > 0.0) || (bb <= 0.0 && a < 1.0) {
        return f64::INFINITY;
    }
    let side = |m: f64, d: f64| if m > 0.0 { m * divergence_kernel(d / m) } else { 0.0 };
    (side(b, d) + side(bb, -d)) / LN_2
}

/// `(1+δ)ln(1+δ) − δ` for `δ ≥ −1`, accurate for small `δ`.
pub(crate) fn divergence_kernel(d: f64) -> f64 {
    if d.abs() < 1e-3 {
        d * d * (0.5 - d * (1.0 / 6.0 - d * (1.0 / 12.0 - d / 20.0)))
    } else if d <= -1.0 {
        1.0
    } else {
        (1.0 + d) * d.ln_1p() - d
    }
}

/// Binary convolution `a ∗ b = a(1-b) + (1-a)b`.
#[inline]
pub fn binary_convolution(a: f64, b: f64) -> f64 {
    a * (1.0 - b) + (1.0 - a) * b
}

/// Entropy of a distribution on four points.
///
/// Rejects inputs whose mass differs from one by more than [`tol::MASS`].
pub fn entropy4(cells: [f64; 4]) -> Result<Bits> {
    for &c in &cells {
        Probability::new(c)?;
    }
    let total: f64 = cells.iter().sum();
    if (total - 1.0).abs() > tol::MASS {
        return Err(Error::NotNormalized(total));
    }
    Ok(entropy_unchecked(&cells))
}

/// `-Σ c log c` without validation.
#[inline]
pub(crate) fn entropy_unchecked(cells: &[f64]) -> Bits {
    -cells.iter().map(|&c| xlogx(c)).sum::<f64>()
}

/// `1 - H((1-t)/2) = D((1-t)/2 ‖ 1/2)`, evaluated without cancellation for small `t`.
///
/// Uses `1 - H((1-t)/2) = ½[(1-t) log(1-t) + (1+t) log(1+t)]`.
pub fn entropy_deficit(t: f64) -> Bits {
    let t = t.abs();
    let lower = if t >= 1.0 {
        0.0
    } else {
        (1.0 - t) * (-t).ln_1p()
    };
    0.5 * (lower + (1.0 + t) * t.ln_1p()) / LN_2
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn xlogx_conventions() {
        assert_eq!(xlogx(0.0), 0.0);
        assert_eq!(xlogx(1.0), 0.0);
        assert_eq!(xlogx(0.5), -0.5);
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5), 1.0);
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        // 50-digit evaluation of the definition.
        assert_abs_diff_eq!(
            binary_entropy(0.11),
            0.499_915_958_164_527_995_640_5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn relative_entropy_values() {
        assert_eq!(binary_relative_entropy(0.3, 0.3), 0.0);
        assert_eq!(binary_relative_entropy(0.5, 0.0), f64::INFINITY);
        assert_eq!(binary_relative_entropy(0.0, 0.0), 0.0);
        assert_abs_diff_eq!(
            binary_relative_entropy(0.1, 0.3),
            0.167_816_821_374_121_811_773_6,
            epsilon = 1e-15
        );
    }

    #[test]
    fn convolution_values() {
        assert_eq!(binary_convolution(0.37, 0.0), 0.37);
        assert_eq!(binary_convolution(0.37, 0.5), 0.5);
        assert_abs_diff_eq!(binary_convolution(0.2, 0.3), 0.38, epsilon = 1e-15);
    }

    #[test]
    fn entropy4_values() {
        assert_eq!(entropy4([0.25; 4]).unwrap(), 2.0);
        assert_eq!(entropy4([1.0, 0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(entropy4([0.5, 0.25, 0.125, 0.125]).unwrap(), 1.75);
        assert!(matches!(
            entropy4([0.5, 0.5, 0.1, 0.0]),
            Err(Error::NotNormalized(_))
        ));
        assert!(entropy4([1.5, -0.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn probability_clamps_within_slack() {
        assert_eq!(Probability::new(-1e-13).unwrap().get(), 0.0);
        assert_eq!(Probability::new(1.0 + 1e-13).unwrap().get(), 1.0);
        assert!(Probability::new(-1e-9).is_err());
        assert!(Probability::new(f64::NAN).is_err());
        assert_eq!(Probability::new(0.25).unwrap().complement().get(), 0.75);
    }

    #[test]
    fn entropy_deficit_matches_direct_form() {
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            let direct = 1.0 - binary_entropy((1.0 - t) / 2.0);
            assert_abs_diff_eq!(entropy_deficit(t), direct, epsilon = 1e-14);
        }
        // Second-order behaviour near zero: t² / (2 ln 2).
        let t = 1e-5;
        assert_abs_diff_eq!(
            entropy_deficit(t) / (t * t),
            1.0 / (2.0 * LN_2),
            epsilon = 1e-9
        );
    }
}
