//! Exact geometry of smooth lattice polytopes and the secant varieties of the
//! projective toric varieties they define.
//!
//! A full-dimensional lattice polytope `P ⊂ R^n` whose vertex cones are all
//! unimodular ("smooth", in the Delzant sense) determines an embedding of a
//! smooth projective toric variety `X_P ⊂ P^r`, where `r + 1` is the number of
//! lattice points of `P`. This crate computes, in exact integer/rational
//! arithmetic throughout:
//!
//! * the basic lattice invariants of `P` (volume, boundary/interior points,
//!   edge lengths, facet data, the inner normal fan);
//! * intersection numbers on `X_P` via Chow classes of torus-orbit closures,
//!   including Chern numbers, Todd-class point counts, and the double-point
//!   expression that controls the secant variety;
//! * the classification of smooth subpolytopes of twice a unimodular simplex
//!   up to affine unimodular equivalence, with an explicit witness map;
//! * the dimension, degree, and secant-line multiplicity of the variety
//!   `Sec X_P` of secant lines, together with the closed-form degree formulas
//!   for the named families (Veronese, truncated Veronese, Segre products,
//!   rational normal scrolls, Segre–Veronese).
//!
//! Everything is deterministic: ties are broken lexicographically, hash maps
//! are avoided in favor of ordered containers, and serialized output is
//! byte-stable across runs.

pub mod chow;
pub mod classify;
mod comb;
pub mod error;
pub mod families;
pub mod fan;
pub mod json;
pub mod polytope;
pub mod secant;
pub mod selftest;
#[cfg(test)]
pub(crate) mod testutil;
pub mod zlinalg;

pub use error::{Error, Result};
pub use zlinalg::{AffineUnimodularMap, IntMat, IntVec};
