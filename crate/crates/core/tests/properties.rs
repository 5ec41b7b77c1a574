//! Property tests over random inputs.

use proptest::prelude::*;
use renyi_ci::coupling::{feasible_interval, g_max, kappa_objective, p_star_general, Coupling2x2};
use renyi_ci::negative::{gamma_ub_negative_grid, omega};
use renyi_ci::relaxed::conditional_mi;
use renyi_ci::scalar::{binary_convolution, binary_entropy, binary_relative_entropy};
use renyi_ci::{relaxed_ci, renyi_ci, wyner_ci, Kappa, Order};

const LN_2: f64 = std::f64::consts::LN_2;

fn eps_inner() -> impl Strategy<Value = f64> {
    0.001f64..0.499
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn entropy_is_symmetric(a in 0.0f64..=1.0) {
        prop_assert!((binary_entropy(a) - binary_entropy(1.0 - a)).abs() <= 1e-12);
    }

    #[test]
    fn relative_entropy_dominates_pinsker(a in 0.0f64..=1.0, b in 0.0001f64..0.9999) {
        let d = binary_relative_entropy(a, b);
        prop_assert!(d >= 0.0);
        prop_assert!(d >= 2.0 / LN_2 * (a - b).powi(2) - 1e-12);
        if (a - b).abs() > 1e-6 {
            prop_assert!(d > 0.0);
        }
    }

    #[test]
    fn convolution_is_commutative_and_associative(a in 0.0f64..=1.0, b in 0.0f64..=1.0, c in 0.0f64..=1.0) {
        prop_assert!((binary_convolution(a, b) - binary_convolution(b, a)).abs() <= 1e-12);
        let l = binary_convolution(binary_convolution(a, b), c);
        let r = binary_convolution(a, binary_convolution(b, c));
        prop_assert!((l - r).abs() <= 1e-12);
    }

    #[test]
    fn stationary_cell_is_feasible_and_stationary(g1 in 0.01f64..0.99, g2 in 0.01f64..0.99, lk in 0.0f64..20.0) {
        let k = Kappa::from_ln(lk).unwrap();
        let p = p_star_general(g1, g2, k).unwrap();
        let (lo, hi) = feasible_interval(g1, g2);
        prop_assert!(p >= lo && p <= hi);
        // In the interior the cell solves (γ₁−p)(γ₂−p) = κ·p(1+p−γ₁−γ₂).
        if p - lo > 1e-6 && hi - p > 1e-6 {
            let lhs = k.value() * p * (1.0 + p - g1 - g2);
            let rhs = (g1 - p) * (g2 - p);
            prop_assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs().max(rhs.abs()).max(1e-12));
        }
    }

    #[test]
    fn objective_is_concave_in_the_cell(g1 in 0.05f64..0.95, g2 in 0.05f64..0.95, lk in 0.0f64..10.0) {
        let k = Kappa::from_ln(lk).unwrap();
        let (lo, hi) = feasible_interval(g1, g2);
        let h = (hi - lo) / 20.0;
        let f = |p: f64| kappa_objective(Coupling2x2::new(p, g1, g2).unwrap(), k);
        for i in 1..20 {
            let p = lo + h * i as f64;
            prop_assert!(f(p - h) - 2.0 * f(p) + f(p + h) <= 1e-9);
        }
    }

    #[test]
    fn g_reflects(g in 0.0f64..=1.0, eps in eps_inner(), s in 0.1f64..5.0) {
        let a = g_max(g, g, eps, s).unwrap();
        let b = g_max(1.0 - g, 1.0 - g, eps, s).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn order_monotone_on_positive_axis(eps in eps_inner()) {
        let alphas = [0.25, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0, 32.0, f64::INFINITY];
        let vals: Vec<f64> = alphas
            .iter()
            .map(|&a| renyi_ci(eps, Order::new(a).unwrap()).unwrap().value)
            .collect();
        for w in vals.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-9, "{vals:?}");
        }
    }

    #[test]
    fn relaxed_ci_solves_its_constraint(r in 0.001f64..0.499, frac in 0.0f64..1.0) {
        let t = frac * (1.0 - binary_entropy(r));
        let w = relaxed_ci(r, t).unwrap();
        prop_assert!((conditional_mi(r, w.q).unwrap() - t).abs() <= 1e-10);
        prop_assert!(w.value <= wyner_ci(r).unwrap() + 1e-12);
    }

    #[test]
    fn relaxed_ci_nonincreasing(r in 0.001f64..0.49, t in 0.0f64..0.5, dr in 0.0f64..0.01, dt in 0.0f64..0.05) {
        let base = relaxed_ci(r, t).unwrap().value;
        prop_assert!(relaxed_ci(r, t + dt).unwrap().value <= base + 1e-12);
        prop_assert!(relaxed_ci(r + dr, t).unwrap().value <= base + 1e-12);
    }

    #[test]
    fn omega_vanishes_at_zero(eps in eps_inner()) {
        prop_assert_eq!(omega(eps, 0.0).unwrap(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn negative_upper_bound_sandwich(eps in 0.01f64..0.45, a in -50.0f64..-0.05) {
        let wyner = wyner_ci(eps).unwrap();
        let alpha = gamma_ub_negative_grid(eps, Order::new(a).unwrap(), 2000).unwrap().value;
        let beta = gamma_ub_negative_grid(eps, Order::new(2.0 * a).unwrap(), 2000).unwrap().value;
        prop_assert!(alpha >= wyner - 1e-9);
        prop_assert!(alpha <= beta + 1e-9);
    }
}
