//! Projective plane and 3-space, the projective line, and pencils.

mod p1;
mod pencil;
mod point;
mod space;

pub use p1::{
    cross_ratio_points, det, harmonic_conjugate, harmonic_defect, harmonic_form,
    reflect_azimuth, P1Value,
};
pub use pencil::{azimuth, cross_ratio_lines, reflect_line, PencilChart};
pub use point::{PLine, PPoint, Point2, Point3};
pub use space::{collinear, reflect_nd, reflection_tangent_point, Line3, Plane};

pub(crate) use point::{cross, dot};
