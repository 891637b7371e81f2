//! Line-framed curves, billiards built from them, and the spherical model.

mod billiard;
mod framed;
mod poly;
pub mod sphere;

pub use billiard::{right_spherical, right_spherical_on, Billiard};
pub use framed::{omega, CurveKind, Domain, FrameField, FramedCurve, FramedPoint};
pub use poly::Poly;
