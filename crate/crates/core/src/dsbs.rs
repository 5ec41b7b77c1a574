//! Closed-form Rényi common information of DSBS(ε).
//!
//! | order α          | value                                    |
//! |------------------|------------------------------------------|
//! | 0                | 0                                        |
//! | (0, 1]           | Wyner's value `1 + H(ε) − 2H(a)`         |
//! | (1, ∞)           | maximal-coupling form with `p*` and `κ`  |
//! | ∞                | exact common information                 |
//! | [−∞, 0)          | Wyner's value, when Condition 1 holds    |
//!
//! Here `ε = 2a(1−a)`, `s = α − 1` and `κ = ((1−ε)/ε)^{2s}`.
//!
//! `κ` grows like `e^{2s·ln((1−ε)/ε)}` and overflows quickly, so it is carried
//! as [`Kappa`], which stores `ln κ`. Every formula that divides by `κ − 1`
//! is evaluated in a rationalized form scaled by `λ = 1/κ`. That form is
//! regular at `κ = 1` and reproduces the analytic limits `p* = γ₁γ₂` and
//! `c = ¼ + t` without a separate series branch.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{check_range, Error, Result};
use crate::negative;
use crate::scalar::{binary_entropy, entropy_unchecked, Bits, LN_2};
use crate::tol;

fn check_epsilon(eps: f64) -> Result<f64> {
    check_range("epsilon", eps, 0.0, 0.5, "[0, 1/2]")
}

fn check_s(s: f64) -> Result<f64> {
    if s.is_nan() || s <= 0.0 {
        return Err(Error::Domain {
            name: "s",
            value: s,
            expected: "(0, inf)",
        });
    }
    Ok(s)
}

/// `a = (1 − √(1−2ε))/2`, computed as `ε/(1 + √(1−2ε))` to avoid cancellation.
pub(crate) fn a_of(eps: f64) -> f64 {
    eps / (1.0 + (1.0 - 2.0 * eps).max(0.0).sqrt())
}

/// DSBS(ε) and the constants derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DsbsParams {
    pub epsilon: f64,
    /// Crossover of the two halves, `a ∗ a = ε`.
    pub a: f64,
    /// `a² / (a² + ā²)`.
    pub b: f64,
    /// `1 − 2b = √(1−2ε)/(1−ε)`.
    pub c_len: f64,
    /// `(1−ε)(1 − H(b))`, which equals Wyner's value.
    pub eta: Bits,
}

impl DsbsParams {
    pub fn new(eps: f64) -> Result<Self> {
        let epsilon = check_epsilon(eps)?;
        let a = a_of(epsilon);
        let abar = 1.0 - a;
        let b = a * a / (a * a + abar * abar);
        Ok(Self {
            epsilon,
            a,
            b,
            c_len: (1.0 - 2.0 * epsilon).sqrt() / (1.0 - epsilon),
            eta: (1.0 - epsilon) * (1.0 - binary_entropy(b)),
        })
    }

    /// `κ` for order `1 + s`.
    pub fn kappa(&self, s: f64) -> Result<Kappa> {
        Kappa::from_eps_s(self.epsilon, s)
    }
}

/// The tilt `κ ≥ 1`, stored as `ln κ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Kappa {
    ln: f64,
}

impl Kappa {
    /// `κ = ((1−ε)/ε)^{2s}`. Fails with [`Error::InfiniteKappa`] at `ε = 0`.
    pub fn from_eps_s(eps: f64, s: f64) -> Result<Self> {
        let eps = check_epsilon(eps)?;
        let s = check_s(s)?;
        if eps == 0.0 {
            return Err(Error::InfiniteKappa);
        }
        let ratio = (1.0 - 2.0 * eps) / eps;
        Ok(Self {
            ln: 2.0 * s * ratio.ln_1p(),
        })
    }

    /// `κ` given directly; `+∞` is accepted.
    pub fn new(kappa: f64) -> Result<Self> {
        if kappa.is_nan() || kappa < 1.0 {
            return Err(Error::Domain {
                name: "kappa",
                value: kappa,
                expected: "[1, inf]",
            });
        }
        Ok(Self { ln: kappa.ln() })
    }

    /// `κ` given by its natural logarithm.
    pub fn from_ln(ln: f64) -> Result<Self> {
        if ln.is_nan() || ln < 0.0 {
            return Err(Error::Domain {
                name: "ln kappa",
                value: ln,
                expected: "[0, inf]",
            });
        }
        Ok(Self { ln })
    }

    pub const ONE: Self = Self { ln: 0.0 };

    pub fn ln(self) -> f64 {
        self.ln
    }

    pub fn log2(self) -> f64 {
        self.ln / LN_2
    }

    /// `κ` itself; may be `+∞`.
    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    /// `λ = 1/κ ∈ [0, 1]`.
    pub fn recip(self) -> f64 {
        (-self.ln).exp()
    }
}

/// Stationary cell `p` of the 2×2 coupling with marginals `(γ₁, γ₂)` under tilt `κ`.
///
/// Solves `(γ₁−p)(γ₂−p) = κ p (1+p−γ₁−γ₂)` for the root in the feasible
/// interval. Scaled by `λ = 1/κ` the equation reads
/// `(1−λ)p² + ((1−λ)u + λ)p − λγ₁γ₂ = 0` with `u = 1−γ₁−γ₂`, and the
/// nonnegative root is taken in whichever rationalization avoids cancellation.
pub(crate) fn stationary_cell(g1: f64, g2: f64, kappa: Kappa) -> f64 {
    let lo = (g1 + g2 - 1.0).max(0.0);
    let hi = g1.min(g2);
    let lam = kappa.recip();
    let u = 1.0 - g1 - g2;
    let bq = (1.0 - lam) * u + lam;
    let disc = bq * bq + 4.0 * (1.0 - lam) * lam * g1 * g2;
    let root = disc.max(0.0).sqrt();
    let p = if bq >= 0.0 {
        let den = bq + root;
        if den > 0.0 {
            2.0 * lam * g1 * g2 / den
        } else {
            lo
        }
    } else {
        (root - bq) / (2.0 * (1.0 - lam))
    };
    p.clamp(lo, hi)
}

/// Wyner's common information `1 + H(ε) − 2H(a)`.
pub fn wyner_ci(eps: f64) -> Result<Bits> {
    let eps = check_epsilon(eps)?;
    let a = a_of(eps);
    Ok((1.0 + binary_entropy(eps) - 2.0 * binary_entropy(a)).max(0.0))
}

/// Exact common information (order `∞`): `1 − (1−2a)log(1−ε) − 2a log ε − 2H(a)`.
///
/// Returns the continuous limit 1 at `ε = 0`.
pub fn exact_ci(eps: f64) -> Result<Bits> {
    let eps = check_epsilon(eps)?;
    if eps == 0.0 {
        return Ok(1.0);
    }
    let a = a_of(eps);
    Ok(1.0 - (1.0 - 2.0 * a) * (1.0 - eps).log2() - 2.0 * a * eps.log2() - 2.0 * binary_entropy(a))
}

/// `κ = ((1−ε)/ε)^{2s}` as a number (possibly `+∞` after overflow).
pub fn kappa(eps: f64, s: f64) -> Result<f64> {
    Ok(Kappa::from_eps_s(eps, s)?.value())
}

/// Optimal diagonal cell `p*` of the order-`(1+s)` coupling.
///
/// Lies in `[max{0, 2a−1}, a²]`; equals `a²` at `ε = ½` and tends to 0 as `s → ∞`.
pub fn p_star(eps: f64, s: f64) -> Result<f64> {
    let k = Kappa::from_eps_s(eps, s)?;
    let a = a_of(eps);
    Ok(stationary_cell(a, a, k))
}

fn super1_value(eps: f64, s: f64) -> Result<(Bits, f64, Kappa)> {
    let k = Kappa::from_eps_s(eps, s)?;
    let a = a_of(eps);
    let p = stationary_cell(a, a, k);
    let cells = [p, a - p, a - p, 1.0 + p - 2.0 * a];
    let value = 1.0
        - (1.0 + 2.0 * p - 2.0 * a) * (1.0 - eps).log2()
        - (2.0 * a - 2.0 * p) * eps.log2()
        - (1.0 + s) / s * 2.0 * binary_entropy(a)
        + entropy_unchecked(&cells) / s;
    Ok((value, p, k))
}

/// `χ(t, κ) = −2H(½+√t) − (c+√t)log(c+√t) − 2(½−c)log(½−c) − (c−√t)log(c−√t) − c log κ`.
///
/// `c = (√(κ + 4κ(κ−1)t) − 1)/(2(κ−1))` is evaluated as `√t + p`, where `p`
/// is the stationary coupling cell at marginals `½ − √t`.
pub fn chi_kappa(t: f64, kappa: Kappa) -> Result<Bits> {
    let t = check_range("t", t, 0.0, 0.25, "[0, 1/4]")?;
    let rt = t.sqrt();
    let g = 0.5 - rt;
    let p = stationary_cell(g, g, kappa);
    let c = rt + p;
    let cells = [p + 2.0 * rt, g - p, g - p, p];
    let log_term = if kappa.ln == 0.0 { 0.0 } else { c * kappa.log2() };
    Ok(-2.0 * binary_entropy(g) + entropy_unchecked(&cells) - log_term)
}

/// `c(t, κ)` of the χ construction; `¼ + t` at `κ = 1` and `√t` at `κ = ∞`.
pub fn chi_c(t: f64, kappa: Kappa) -> Result<f64> {
    let t = check_range("t", t, 0.0, 0.25, "[0, 1/4]")?;
    let lam = kappa.recip();
    if lam == 0.0 && t == 0.0 {
        return Ok(0.0);
    }
    Ok((lam + 4.0 * t) / (2.0 * ((lam + 4.0 * (1.0 - lam) * t).sqrt() + lam)))
}

/// `χ_s(t)`, whose value at `t = (1−2ε)/4` is the order-`(1+s)` common information.
///
/// Written out,
/// `χ_s(t) = −((1+s)/s)·2H(½+√t) + (1/s)[−xl(c+√t) − 2xl(½−c) − xl(c−√t) + (½−c)log κ − s·log((1−ε)/2)]`
/// with `xl(x) = x log x`. The constant `½ log κ = s·log((1−ε)/ε)` inside the
/// bracket comes from the cross-entropy term `(γ₁+γ₂−2p)·½ log κ`; it is what
/// makes the identity at `t = (1−2ε)/4` hold.
pub fn chi_s(t: f64, eps: f64, s: f64) -> Result<Bits> {
    let eps = check_epsilon(eps)?;
    if eps == 0.0 {
        return Err(Error::InfiniteKappa);
    }
    let k = Kappa::from_eps_s(eps, s)?;
    let chi = chi_kappa(t, k)?;
    // ½ log κ / s = log((1−ε)/ε); combined with −log((1−ε)/2) this is 1 − log ε.
    Ok(chi / s - 2.0 * binary_entropy(0.5 - t.sqrt()) + 1.0 - eps.log2())
}

/// An extended-real Rényi order together with its regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Zero,
    UnitInterval(f64),
    Super1(f64),
    PlusInfinity,
    NegativeFinite(f64),
    MinusInfinity,
}

impl Order {
    pub fn new(alpha: f64) -> Result<Self> {
        Ok(match alpha {
            a if a.is_nan() => {
                return Err(Error::Domain {
                    name: "alpha",
                    value: a,
                    expected: "[-inf, inf]",
                })
            }
            f64::INFINITY => Self::PlusInfinity,
            f64::NEG_INFINITY => Self::MinusInfinity,
            0.0 => Self::Zero,
            a if a < 0.0 => Self::NegativeFinite(a),
            a if a <= 1.0 => Self::UnitInterval(a),
            a => Self::Super1(a),
        })
    }

    pub fn alpha(self) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::UnitInterval(a) | Self::Super1(a) | Self::NegativeFinite(a) => a,
            Self::PlusInfinity => f64::INFINITY,
            Self::MinusInfinity => f64::NEG_INFINITY,
        }
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Self::NegativeFinite(_) | Self::MinusInfinity)
    }

    pub fn regime(self) -> Regime {
        match self {
            Self::Zero => Regime::Zero,
            Self::UnitInterval(_) => Regime::Wyner,
            Self::Super1(_) => Regime::Super1,
            Self::PlusInfinity => Regime::Exact,
            Self::NegativeFinite(_) | Self::MinusInfinity => Regime::NegativeUb,
        }
    }

    /// The divergence-budget factor `1 − 1/α` of a negative order (1 at `−∞`).
    pub fn budget_factor(self) -> Option<f64> {
        match self {
            Self::NegativeFinite(a) => Some(1.0 - 1.0 / a),
            Self::MinusInfinity => Some(1.0),
            _ => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_extended(self.alpha(), f)
    }
}

pub(crate) fn fmt_extended(x: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x == f64::INFINITY {
        f.write_str("inf")
    } else if x == f64::NEG_INFINITY {
        f.write_str("-inf")
    } else {
        write!(f, "{x}")
    }
}

impl FromStr for Order {
    type Err = Error;

    /// Accepts finite decimals, `inf`, `+inf`, `-inf` and `infinity`.
    fn from_str(s: &str) -> Result<Self> {
        let v: f64 = s.trim().parse().map_err(|_| Error::Domain {
            name: "alpha",
            value: f64::NAN,
            expected: "a decimal, inf or -inf",
        })?;
        Self::new(v)
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let a = self.alpha();
        if a.is_finite() {
            serializer.serialize_f64(a)
        } else {
            serializer.serialize_str(&self.to_string())
        }
    }
}

/// Which branch of the closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Zero,
    Wyner,
    Super1,
    Exact,
    NegativeUb,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Zero => "zero",
            Self::Wyner => "wyner",
            Self::Super1 => "super1",
            Self::Exact => "exact",
            Self::NegativeUb => "negative-ub",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether a reported value is the common information itself or an upper bound on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tightness {
    Exact,
    UpperBound,
}

/// Optimizer record behind a value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Super1 {
        p_star: f64,
        kappa_log2: f64,
    },
    Negative {
        r_star: f64,
        q: f64,
        t: f64,
    },
}

/// A computed common-information value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CiResult {
    pub value: Bits,
    pub alpha: Order,
    pub regime: Regime,
    pub epsilon: f64,
    pub tightness: Tightness,
    pub witness: Option<Witness>,
}

impl CiResult {
    fn plain(value: Bits, order: Order, eps: f64) -> Self {
        Self {
            value,
            alpha: order,
            regime: order.regime(),
            epsilon: eps,
            tightness: Tightness::Exact,
            witness: None,
        }
    }
}

/// Rényi common information of DSBS(ε) at order `α`.
///
/// Negative orders return Wyner's value only when Condition 1 holds at `ε`;
/// otherwise [`Error::PhaseUncertain`] is returned and the upper bound is
/// available from [`negative::gamma_ub_negative`].
pub fn renyi_ci(eps: f64, order: Order) -> Result<CiResult> {
    let eps = check_epsilon(eps)?;
    if eps == 0.5 {
        return Ok(CiResult::plain(0.0, order, eps));
    }
    match order {
        Order::Zero => Ok(CiResult::plain(0.0, order, eps)),
        Order::UnitInterval(_) => Ok(CiResult::plain(wyner_ci(eps)?, order, eps)),
        Order::PlusInfinity => Ok(CiResult::plain(exact_ci(eps)?, order, eps)),
        Order::Super1(alpha) => {
            if eps == 0.0 {
                return Ok(CiResult::plain(1.0, order, eps));
            }
            let (value, p, k) = super1_value(eps, alpha - 1.0)?;
            Ok(CiResult {
                witness: Some(Witness::Super1 {
                    p_star: p,
                    kappa_log2: k.log2(),
                }),
                ..CiResult::plain(value, order, eps)
            })
        }
        Order::NegativeFinite(_) | Order::MinusInfinity => {
            if eps == 0.0 {
                return Ok(CiResult::plain(1.0, order, eps));
            }
            let report = negative::condition1_holds(eps, tol::CONDITION1_GRID)?;
            if !report.holds {
                return Err(Error::PhaseUncertain {
                    epsilon: eps,
                    alpha: order.alpha(),
                });
            }
            Ok(CiResult::plain(wyner_ci(eps)?, order, eps))
        }
    }
}
