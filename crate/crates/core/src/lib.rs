//! Exact-arithmetic library for the generic slice rank of forms, the
//! codimension function of joins of secant varieties of reducible forms,
//! and the finite verification pipeline built on top of them.
//!
//! The crate is organized around six modules:
//!
//! - [`series`]: truncated power series with exact integer coefficients,
//!   Fröberg-style series and the bracket (truncate-at-first-negative)
//!   operator.
//! - [`slicerank`]: closed-form generic slice rank, Fano dimension counts,
//!   the auxiliary root polynomial with certified bounds, and plateau-point
//!   enumeration.
//! - [`strength`]: the codimension function `f_{n,d}` (two independent
//!   evaluation paths), secant/join codimensions, tangent-ideal generator
//!   profiles, the key inequality and the known-cases coverage grid.
//! - [`symbolic`]: exact multivariate polynomials over the rationals,
//!   the bounding polynomials of the asymptotic argument, certified
//!   isolation of largest real roots and threshold recomputation.
//! - [`verifier`]: exhaustive enumeration of the boundary cases of the key
//!   inequality up to the certified thresholds, with machine-readable
//!   certificates.
//! - [`oracle`]: randomized Hilbert-function computation over a prime field
//!   (Macaulay-matrix rank) for desk-scale cross-checks.
//!
//! All semantic results are exact: integers are arbitrary precision,
//! thresholds and root bounds are certified by exact rational sign
//! evaluations, and the oracle works over a prime field with explicitly
//! recorded seeds.

pub mod error;
pub mod oracle;
pub mod series;
pub mod slicerank;
pub mod strength;
pub mod symbolic;
pub mod verifier;

pub use error::{Error, Result};
