//! Exact numerical invariants of exceptional sets whose conormal bundle
//! carries a filtration by line bundles `O_Z(a₁), …, O_Z(a_{n-p})`.
//!
//! * [`combinatorics`]: big-integer binomials and the alternating-sum and
//!   composition power-sum identities.
//! * [`lattice_enum`]: composition streams, weighted by doubling pattern.
//! * [`graded_model`]: graded pieces of ideal powers as twist multisets, with
//!   length and Chern data.
//! * [`char_poly`]: partial sums of top Chern-character terms, interpolation in
//!   `r`, leading coefficients.
//! * [`admissibility`]: the inequality systems on `a` and a box enumerator.
//! * [`singularity`]: Hilbert function and embedding dimension of the
//!   contracted point.
//! * [`verify`]: identity suites backing `exckit verify`.
//!
//! All arithmetic is exact. Degree vectors are conormal degrees; the normal
//! bundle of a split example is `⊕ O(-aᵢ)`.

pub mod admissibility;
pub mod char_poly;
pub mod combinatorics;
pub mod error;
pub mod graded_model;
pub mod lattice_enum;
pub mod singularity;
pub mod verify;

pub use combinatorics::{ExactInt, ExactRat};
pub use error::{Error, Result};
pub use graded_model::Geometry;
