//! Exact-arithmetic analysis of unilateral weighted shifts.
//!
//! A weighted shift maps the basis vector `e_n` of `l^2` to `a_n * e_{n+1}`.
//! Everything this crate computes about such operators — hyponormality of a
//! given order, subnormality thresholds for back-step extensions, quadratic
//! hyponormality of the shift plus a multiple of its square — reduces to
//! questions about the *moments* of the squared weight sequence, and those
//! questions are decided here in exact rational arithmetic. No floats.
//!
//! Layout:
//! - [`exactmath`] — big rationals, univariate polynomials, symmetric-matrix
//!   positivity, real-root isolation. The substrate.
//! - [`weights`] — squared weight sequences and their transforms (back-step
//!   extension, Schur product, packet products for operator powers).
//! - [`measures`] — finitely presented representing measures on `[0,1]` and
//!   the thresholds they yield for subnormal back-step extensions.
//! - [`positivity`] — Hankel moment windows, k-hyponormality verdicts and
//!   exact back-step thresholds.
//! - [`quadratic`] — tridiagonal determinant machinery for quadratic
//!   hyponormality and its "all Maclaurin coefficients nonnegative" variant.

pub mod error;
pub mod exactmath;
pub mod measures;
pub mod positivity;
pub mod quadratic;
pub mod weights;

pub use error::Error;
pub use exactmath::Rat;
