//! Tolerance constants shared by every module.
//!
//! The numbers here are the contract: tests, the verification suites and the
//! CLI manifest all read them from this one place.

use serde::Serialize;

/// Slack allowed when validating a probability; values within it are clamped.
pub const PROBABILITY_SLACK: f64 = 1e-12;
/// Default equality tolerance for identities between two closed forms.
pub const EQUALITY: f64 = 1e-9;
/// Default grid step for dense one-dimensional sweeps.
pub const GRID_STEP: f64 = 1e-4;
/// Allowed deviation of a four-cell distribution from total mass one.
pub const MASS: f64 = 1e-9;
/// Maximum residual accepted from the relaxed-CI root solve.
pub const ROOT_RESIDUAL: f64 = 1e-12;
/// Slack for inequalities that are proved (lemma sweeps).
pub const PROVEN_SLACK: f64 = 1e-10;
/// Slack for monotonicity / convexity checks on sampled differences.
pub const SHAPE_SLACK: f64 = 1e-8;
/// Relative agreement required between analytic and finite-difference derivatives.
pub const FD_RELATIVE: f64 = 1e-5;
/// Scale floor for the relative finite-difference comparison.
pub const FD_SCALE_FLOOR: f64 = 1e-3;
/// Width at which the coupling oracle's golden-section search stops.
pub const ORACLE_WIDTH: f64 = 1e-12;
/// Intervals narrower than this are treated as a single point.
pub const SINGLETON_WIDTH: f64 = 1e-14;
/// Refinement width in `s` for the Condition-1 maximum.
pub const OMEGA_REFINE: f64 = 1e-10;
/// Default number of `s` grid points for Condition 1.
pub const CONDITION1_GRID: usize = 10_000;
/// Default number of `r` grid points for the negative-order supremum.
pub const NEGATIVE_GRID: usize = 10_000;
/// Feasibility slack on the conditional mutual information in the brute-force oracle.
pub const BRUTE_FEASIBILITY: f64 = 1e-12;
/// Sub-intervals scanned for sign changes before the relaxed-CI root solve.
pub const ROOT_SCAN: usize = 64;

/// Snapshot of the tolerance set, serialized into run manifests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub probability_slack: f64,
    pub equality: f64,
    pub grid_step: f64,
    pub mass: f64,
    pub root_residual: f64,
    pub proven_slack: f64,
    pub shape_slack: f64,
    pub fd_relative: f64,
    pub oracle_width: f64,
    pub omega_refine: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            probability_slack: PROBABILITY_SLACK,
            equality: EQUALITY,
            grid_step: GRID_STEP,
            mass: MASS,
            root_residual: ROOT_RESIDUAL,
            proven_slack: PROVEN_SLACK,
            shape_slack: SHAPE_SLACK,
            fd_relative: FD_RELATIVE,
            oracle_width: ORACLE_WIDTH,
            omega_refine: OMEGA_REFINE,
        }
    }
}
