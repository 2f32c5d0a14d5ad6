//! Exact arithmetic for the Catalan numbers and their generating function.
//!
//! - [`catalan`]: four independent generators of `C_0..C_n` and an exact cross-check
//! - [`series`]: truncated formal power series over the rationals
//! - [`bounds`]: exponential growth bounds, induction checks, root/ratio tests
//! - [`singularity`]: dominant singularities of curves quadratic in `w`

pub mod bounds;
pub mod catalan;
mod error;
pub mod series;
pub mod singularity;

pub use error::{Error, Result};

/// Arbitrary-precision exact integer.
pub type ExactInteger = num_bigint::BigInt;
/// Arbitrary-precision exact rational.
pub type ExactRational = num_rational::BigRational;
