use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("cells sum to {0}, expected 1")]
    NotNormalized(f64),

    #[error("kappa is infinite at epsilon = 0; use the analytic limits")]
    InfiniteKappa,

    #[error(
        "Condition 1 fails at epsilon = {epsilon}; the order-{alpha} value is only bounded \
         (use the negative-order upper bound instead)"
    )]
    PhaseUncertain { epsilon: f64, alpha: f64 },

    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    NotBracketed {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root residual {residual} exceeds {tolerance} at x = {x}")]
    Residual {
        x: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("point outside the splitting region: {0}")]
    OutOfRegion(&'static str),

    #[error("Condition-1 verdict is {verdict} at both bracket ends [{lo}, {hi}]; widen the bracket")]
    SameVerdict { lo: f64, hi: f64, verdict: bool },

    #[error("no grid point satisfies the constraint; refine the grid")]
    EmptyFeasibleSet,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    expected: &'static str,
) -> Result<f64> {
    if value.is_nan() || value < lo || value > hi {
        Err(Error::Domain {
            name,
            value,
            expected,
        })
    } else {
        Ok(value)
    }
}
