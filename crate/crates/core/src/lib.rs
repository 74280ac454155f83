//! Algebraic entropy of endomorphisms of finite-dimensional rational vector spaces.
//!
//! The entropy of `phi: Q^N -> Q^N` equals the logarithmic Mahler measure of its
//! characteristic polynomial over Z, and splits into one contribution per place of Q:
//! the archimedean part comes from complex roots outside the unit disc, the
//! contribution of a prime `p` from the Newton polygon of the polynomial at `p`.
//!
//! [`trajectory`] is an independent brute-force check: it enumerates the sumsets
//! `E + phi(E) + ... + phi^(n-1)(E)` exactly and measures their growth.

pub mod corpus;
pub mod entropy;
pub mod error;
pub mod exact_arith;
pub mod mahler;
pub mod padic;
pub mod rational_linalg;
pub mod trajectory;

pub use error::{Error, Result};
