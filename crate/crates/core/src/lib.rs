//! Rényi common information of the doubly symmetric binary source.
//!
//! `DSBS(ε)` is the pair `(X, Y)` of uniform bits with `P(X ≠ Y) = ε`,
//! `0 ≤ ε ≤ ½`. For every order `α ∈ [−∞, +∞]` this crate evaluates the
//! Rényi common information `T_α(ε)` in bits:
//!
//! | order            | value                                          | tightness   |
//! |------------------|------------------------------------------------|-------------|
//! | `α = 0`          | `0`                                            | exact       |
//! | `0 < α ≤ 1`      | Wyner's common information                     | exact       |
//! | `1 < α < ∞`      | closed form through the stationary coupling    | exact       |
//! | `α = +∞`         | exact common information                       | exact       |
//! | `α < 0`          | Wyner's value when Condition 1 holds at `ε`    | exact       |
//!
//! and, for negative orders where Condition 1 fails, an upper bound from the
//! relaxed common information ([`negative::gamma_ub_negative`]).
//!
//! ```
//! use renyi_ci::{renyi_ci, wyner_ci, Order, Regime};
//!
//! let r = renyi_ci(0.3, Order::new(0.5).unwrap()).unwrap();
//! assert_eq!(r.regime, Regime::Wyner);
//! assert!((r.value - wyner_ci(0.3).unwrap()).abs() < 1e-15);
//! ```
//!
//! Supporting inequalities are checked numerically in [`lemmas`].

pub mod coupling;
pub mod dsbs;
pub mod error;
pub mod lemmas;
pub mod negative;
pub mod relaxed;
pub mod scalar;
pub mod solve;
pub mod tol;

pub use dsbs::{
    chi_s, exact_ci, kappa, p_star, renyi_ci, wyner_ci, CiResult, DsbsParams, Kappa, Order,
    Regime, Tightness, Witness,
};
pub use error::{Error, Result};
pub use negative::{condition1_holds, epsilon0, gamma_ub_negative, phase_scan};
pub use relaxed::{brute_force_relaxed_ci, relaxed_ci};
pub use scalar::{binary_entropy, binary_relative_entropy, Bits};
