//! Projective billiards: framed curves, the harmonic reflection law,
//! closure of 3-periodic orbits and the rank of the Birkhoff distribution.

pub mod birkhoff;
pub mod curves;
pub mod dynamics;
pub mod error;
pub mod projective;
mod rational;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Dual, FieldMode, Rational, Scalar};
