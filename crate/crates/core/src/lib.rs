//! Exact computational algebra for polynomials on finite grids over
//! commutative rings: Lagrange constants and interpolation, coefficient
//! formulas with d-leading multiindices, trimming certificates,
//! δ-permanents and orientation counts, and counting checkers that verify
//! every asserted identity by exhaustive search.
//!
//! The CLI front end lives in the `nullkit` binary; the C ABI in the
//! companion `nullkit-ffi` crate. Both route JSON operations through
//! [`dispatch::run_op`].

pub mod coefficient;
pub mod dispatch;
pub mod error;
mod exact;
pub mod gridcore;
pub mod interpolate;
pub mod json;
pub mod multipoly;
pub mod nullsatz;
pub mod numapps;
pub mod permanent;
pub mod ring;
pub mod selftest;
pub mod solver;

pub use error::{Error, Result};
