//! The guide under `book/`, compiled so that its listings run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/conventions.md")]
pub mod conventions {}
#[doc = include_str!("../../../book/src/orders.md")]
pub mod orders {}
#[doc = include_str!("../../../book/src/couplings.md")]
pub mod couplings {}
#[doc = include_str!("../../../book/src/relaxed.md")]
pub mod relaxed {}
#[doc = include_str!("../../../book/src/negative.md")]
pub mod negative {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
