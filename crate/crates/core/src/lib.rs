//! Complete elliptic integral of the second kind, Stolarsky-mean
//! approximations to `(2/pi) E(r)`, and numeric/exact checks of their sharp bounds.
//!
//! Numeric code is generic over [`Real`] (`f32`, `f64`); coefficient work is
//! done in exact rationals. The `*64` aliases pin the common `f64` case.

pub mod analysis;
pub mod approximations;
pub mod error;
pub mod quadrature;
pub mod series;
mod scalar;
pub mod special_fn;
pub mod stolarsky;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Real, EULER_GAMMA, EULER_GAMMA_DIGITS};

pub type Modulus64 = special_fn::Modulus<f64>;
pub type EvalOptions64 = special_fn::EvalOptions<f64>;
