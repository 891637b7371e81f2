//! Orbits of projective billiards.

mod asymptotics;
mod closure;
mod index;
mod map;
mod nd;
mod newton;
mod scan;

pub use closure::{closure_residual, closure_residual_at, third_vertex, ClosureResidual};
pub use map::{billiard_map, intersect_piece, iterate, line_distance, Orbit, OrbitVertex, VertexDefect};
pub use newton::{closed_orbit, find_periodic, PeriodicOrbit};
pub use scan::{cell_centers, default_ranges, scan, ScanReport, ScanRow};
pub use index::{intersection_index, IntersectionIndex};
pub use asymptotics::{
    asymptotics_experiment, default_targets, reference_cases, AsymptoticsCase, AsymptoticsReport, AsymptoticsRow,
};
pub use nd::{planarity_check, Orbit3};
