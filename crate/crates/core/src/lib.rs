//! Superconformal surfaces in R⁴ built from pairs of conjugate minimal surfaces.
//!
//! A surface in R⁴ is superconformal when its ellipse of curvature is a circle at
//! every point. Every such surface (away from minimal and umbilical points) is
//! obtained as `φ± = g + 𝒥±h` from a minimal surface `g` and its conjugate `h`.
//! This crate builds those surfaces from holomorphic curves `G = g + ih`, checks
//! their geometry with exact second-order jets, and implements the conformal
//! transforms (inversions, the holomorphic inversion `T`, duality of holomorphic
//! curves, stereographic projections) that relate them.
//!
//! The crate is `no_std` with `alloc`. File formats, the CLI and parallel grid
//! drivers live in the `superconf` crate.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod catalog;
pub mod construct;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod grid;
pub mod jets;
pub mod math;
pub mod minimal;
pub mod moebius;

pub use error::{Error, Result};
pub use num_complex::Complex64;
