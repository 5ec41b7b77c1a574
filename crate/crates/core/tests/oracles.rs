//! Frozen high-precision reference values and cross-checks between independent evaluations.

#![allow(clippy::excessive_precision)]

use approx::assert_abs_diff_eq;
use renyi_ci::coupling::{coupling_oracle_kappa, gamma_ub_super1, p_star_general};
use renyi_ci::dsbs::chi_s;
use renyi_ci::negative::gamma_ub_negative;
use renyi_ci::relaxed::q0;
use renyi_ci::scalar::{binary_entropy, binary_relative_entropy};
use renyi_ci::{epsilon0, exact_ci, p_star, relaxed_ci, renyi_ci, wyner_ci, Kappa, Order};

// 50-digit mpmath evaluations, rounded.
const H_011: f64 = 0.499_915_958_164_527_995_64;
const D_01_03: f64 = 0.167_816_821_374_121_811_77;
const WYNER_03: f64 = 0.504_770_662_576_845_537_16;
const WYNER_011: f64 = 0.857_699_046_015_117_571_82;
const EXACT_03: f64 = 0.587_336_508_322_082_637_46;
const PSTAR_03_S1: f64 = 0.008_772_233_983_162_066_800_1;
const GAMMA_03_A2: f64 = 0.540_495_404_987_476_939_21;
const GAMMA_01_A4: f64 = 0.889_010_571_362_617_418_44;
const Q0_03: f64 = 0.048_246_048_547_374_381_143;
const C_011_01: f64 = 0.577_860_441_642_585_055_88;
const GAP_003: f64 = 9.404_097_658_878_557_5e-5;
const EPS0: f64 = 0.055_104_651_702_979_850_058;

fn order(a: f64) -> Order {
    Order::new(a).unwrap()
}

#[test]
fn scalar_values() {
    assert_abs_diff_eq!(binary_entropy(0.11), H_011, epsilon = 1e-15);
    assert_abs_diff_eq!(binary_relative_entropy(0.1, 0.3), D_01_03, epsilon = 1e-15);
}

#[test]
fn closed_forms() {
    assert_abs_diff_eq!(wyner_ci(0.3).unwrap(), WYNER_03, epsilon = 1e-14);
    assert_abs_diff_eq!(wyner_ci(0.11).unwrap(), WYNER_011, epsilon = 1e-14);
    assert_abs_diff_eq!(exact_ci(0.3).unwrap(), EXACT_03, epsilon = 1e-14);
    assert_abs_diff_eq!(p_star(0.3, 1.0).unwrap(), PSTAR_03_S1, epsilon = 1e-15);
    assert_abs_diff_eq!(renyi_ci(0.3, order(2.0)).unwrap().value, GAMMA_03_A2, epsilon = 1e-13);
    assert_abs_diff_eq!(renyi_ci(0.1, order(4.0)).unwrap().value, GAMMA_01_A4, epsilon = 1e-13);
    assert_abs_diff_eq!(q0(0.3).unwrap(), Q0_03, epsilon = 1e-15);
    assert_abs_diff_eq!(relaxed_ci(0.11, 0.1).unwrap().value, C_011_01, epsilon = 1e-12);
}

#[test]
fn super1_closed_form_matches_coupling_oracle() {
    for &eps in &[0.05, 0.1, 0.2, 0.3, 0.45] {
        for &s in &[0.01, 0.1, 1.0, 3.0, 10.0] {
            let closed = renyi_ci(eps, order(1.0 + s)).unwrap().value;
            assert_abs_diff_eq!(gamma_ub_super1(eps, s).unwrap(), closed, epsilon = 1e-10);
            let t = (1.0 - 2.0 * eps) / 4.0;
            assert_abs_diff_eq!(chi_s(t, eps, s).unwrap(), closed, epsilon = 1e-9);
        }
    }
}

#[test]
fn stationary_cell_limits_match_oracle() {
    // s → 0 gives the independent cell, s → ∞ the extreme one.
    for &(g1, g2) in &[(0.2, 0.3), (0.6, 0.7), (0.1, 0.95)] {
        let near_one = Kappa::from_ln(1e-10).unwrap();
        assert_abs_diff_eq!(p_star_general(g1, g2, near_one).unwrap(), g1 * g2, epsilon = 1e-9);
        let huge = Kappa::from_ln(200.0).unwrap();
        let extreme = (g1 + g2 - 1.0f64).max(0.0);
        assert_abs_diff_eq!(p_star_general(g1, g2, huge).unwrap(), extreme, epsilon = 1e-12);
        let (p, _) = coupling_oracle_kappa(g1, g2, huge).unwrap();
        assert_abs_diff_eq!(p, extreme, epsilon = 1e-9);
    }
}

#[test]
fn threshold() {
    let e = epsilon0(1e-9).unwrap();
    assert!((e.epsilon0 - EPS0).abs() <= 1e-9, "{e:?}");
    assert!(e.single_crossing);
}

#[test]
fn negative_gap_below_threshold() {
    let v = gamma_ub_negative(0.03, order(f64::NEG_INFINITY)).unwrap().value;
    assert_abs_diff_eq!(v - wyner_ci(0.03).unwrap(), GAP_003, epsilon = 1e-9);
}

#[test]
fn degenerate_source_is_zero_for_every_order() {
    for &a in &[f64::NEG_INFINITY, -3.0, 0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
        assert_eq!(renyi_ci(0.5, order(a)).unwrap().value, 0.0);
    }
}
