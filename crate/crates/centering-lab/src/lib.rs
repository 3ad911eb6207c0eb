//! # centering-lab
//!
//! Sharp constants for centered and conditionally centered moments on L^p
//! spaces, with the numerical machinery to maximize, attain, and certify
//! them.
//!
//! Centering a random variable cannot inflate its p-th moment by more than
//! a universal factor: `||xi - E xi||_p <= C_p ||xi||_p`, where
//!
//! ```text
//! C_p = max_a (a^(p-1) + (1-a)^(p-1))^(1/p) (a^(1/(p-1)) + (1-a)^(1/(p-1)))^(1-1/p)
//! ```
//!
//! and the same constant governs conditional centering `xi - E[xi | G]` for
//! every sub-sigma-algebra `G`. The bound is attained by two-point
//! distributions, every intermediate value in `[1, C_p]` is realized by a
//! measure-pairing sigma-algebra on `[0, 1]`, and `C_p` is also the optimal
//! constant in the bounded compact approximation property of L^p([0, 1]).
//! This crate computes all of those objects and cross-checks every value
//! through independent routes.
//!
//! | Module | What it computes |
//! |--------|------------------|
//! | [`constants`] | `C_p(alpha)`, `C_p`, interpolation bounds, extremal two-point laws |
//! | [`prob`] | finite probability spaces, L^p norms, conditional expectation |
//! | [`opnorm`] | operator norms / lower norms on weighted L^p, `c_p` of a space, subset oracle |
//! | [`mixture`] | zero-mean mixtures of two-point laws and the ratio bound they certify |
//! | [`interval`] | the pairing sigma-algebra on `[0,1]`: norms, extremals, exact discretizations |
//! | [`bcap`] | compact-approximation certificates and `||I - gamma E||` benchmarks |
//! | [`verify`] | the seeded invariant suites behind `centering-lab verify` |
//!
//! ## Quick start
//!
//! ```rust
//! use centering_lab::constants::{cp_alpha, max_cp};
//! use centering_lab::exponent::Exponent;
//!
//! let p = Exponent::Finite(3.0);
//! let c3 = max_cp(p);
//! assert!((c3.value - 1.0957314336981363).abs() < 1e-9);
//! assert!(cp_alpha(p, 0.3).unwrap() < c3.value);
//! ```
//!
//! Runnable walkthroughs for each capability live in `examples/`; the
//! `centering-lab` binary exposes the same operations with JSON/CSV output.

pub mod bcap;
pub mod cli;
pub mod constants;
pub mod error;
pub mod exponent;
pub mod interval;
pub mod io;
pub mod mixture;
pub mod opnorm;
pub mod prob;
pub mod verify;

pub use error::{Error, Result};
pub use exponent::Exponent;
