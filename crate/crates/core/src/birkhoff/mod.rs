//! The Birkhoff distribution on triangular phase space and its rank on
//! orbit surfaces.

mod linalg;
mod phase;
mod rank;

pub use linalg::{
    column_span, containment_defect, decide_rank, intersection_dim, kernel, realify, RankInfo, SubspaceBasis,
};
pub use phase::{Chart, PhasePoint, Vertex, CHART_DIM};
pub use rank::{
    birkhoff_d, family_tangent, restricted_rank, restricted_rank_in, tangent_m_alpha, Dims, RankRecord,
    DEFAULT_SV_TOL,
};
