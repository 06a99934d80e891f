//! Exact-arithmetic building blocks for motivic decompositions.
//!
//! Everything here is computed over exact rationals, with denominators
//! tracked against localized integer rings `Z[1/N]`. The crate provides:
//!
//! - [`arith`]: scalars in `Z[1/N]`, invertibility tests, the universal
//!   Todd denominators `T_m`, and idempotent-matrix splitting.
//! - [`charclasses`]: universal Chern-character and Todd polynomials in
//!   formal Chern classes, with exact denominator control.
//! - [`qform`]: nonsingular quadratic forms over `Q` and their classical
//!   invariants, including a Hasse–Minkowski anisotropy decision.
//! - [`brauer`]: Brauer classes of `Q` described by local invariants.
//! - [`motive`]: formal Chow / noncommutative motive expressions, the
//!   orbit-category morphism calculus, and the twist-reconstruction
//!   procedure for objects that become sums of units.
//! - [`grr`]: the Chern-character correspondence map and Riemann–Roch
//!   bookkeeping on products of projective spaces.
//!
//! A narrative guide with runnable examples lives in `book/`; its code
//! blocks are compiled as doc-tests through the [`guide`] module.

pub mod arith;
pub mod brauer;
pub mod charclasses;
pub mod grr;
pub mod guide;
pub mod motive;
pub mod qform;
pub mod selftest;

pub(crate) mod numtheory;

pub use arith::{LocalizedScalar, RingTag, ScalarMatrix};
