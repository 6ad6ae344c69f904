//! Exact computation with elliptic curves over rational function fields `F_q(t)`.
//!
//! The crate is split along the objects it manipulates:
//!
//! * [`gf`] — finite fields `F_q`, `q = p^k`, `p >= 5`, with square detection
//!   and deterministic square roots,
//! * [`polyring`] — dense univariate arithmetic over those fields: gcd,
//!   square-free tests, resultants, full factorization, valuations and
//!   residue fields,
//! * [`curve`] — short Weierstrass curves `y^2 = x^3 + A(t)x + B(t)`,
//!   quadratic twists, model normalization, naive heights and minimal twists,
//! * [`localred`] — local reduction data at every place of `P^1` (Kodaira
//!   type, Tamagawa number) together with the derived cohomological dimension
//!   bookkeeping,
//! * [`family`] — enumeration and counting of height-bounded twist families,
//! * [`ortho`] — nondegenerate symmetric bilinear forms over `F_p`,
//!   reflections, constructive Witt extension and brute-force orbit counting
//!   for the orthogonal group and its commutator subgroup.
//!
//! Everything is exact: no floating point, no randomness other than fixed
//! seeds recorded in outputs. The crate is `no_std` (alloc only); IO, parsing
//! and report formats live in the companion CLI crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arith;
pub mod curve;
pub mod family;
pub mod gf;
pub mod localred;
pub mod ortho;
pub mod polyring;
