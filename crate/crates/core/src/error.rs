use thiserror::Error;

/// Errors raised by geometric constructions, dynamics and rank measurements.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("homogeneous vector is identically zero")]
    ZeroVector,
    #[error("points coincide; the joining line is undefined")]
    CoincidentPoints,
    #[error("lines coincide; the meeting point is undefined")]
    CoincidentLines,
    #[error("cross-ratio reference points are not pairwise distinct")]
    DegeneratePencil,
    #[error("lines are not concurrent")]
    NotConcurrent,
    #[error("auxiliary line passes through the pencil center")]
    AuxThroughCenter,
    #[error("harmonic conjugate of a degenerate pair")]
    DegeneratePair,
    #[error("the line is the reference line of the chart")]
    LineIsReference,
    #[error("line does not pass through the given point")]
    NotThroughPoint,
    #[error("frame line coincides with the tangent line")]
    DegenerateFrame,
    #[error("pivot lies on the supporting line")]
    PivotOnLine,
    #[error("points are collinear")]
    CollinearVertices,
    #[error("conic is degenerate")]
    DegenerateConic,
    #[error("parameter {param} outside domain [{lo}, {hi}]")]
    OutsideDomain { param: f64, lo: f64, hi: f64 },
    #[error("frame is not transverse to the curve at parameter {param}")]
    NotTransverse { param: f64 },
    #[error("line is tangent to the boundary at the incidence point")]
    TangentIncidence,
    #[error("reflected line does not meet the next piece inside its domain")]
    NoIntersectionInDomain,
    #[error("configuration is degenerate: {0}")]
    DegenerateConfiguration(&'static str),
    #[error("no convergence; best residual {best_residual:e}")]
    NoConvergence { best_residual: f64 },
    #[error("iterate left the parameter domain of piece {piece}")]
    LeftDomain { piece: usize },
    #[error("chart is degenerate at this point")]
    ChartDegenerate,
    #[error("constraint Jacobian has rank {rank}, expected {expected}")]
    RankDrop { rank: usize, expected: usize },
    #[error("no clean singular-value gap around threshold {threshold:e}")]
    RankUnstable { threshold: f64 },
    #[error("line does not pass through the point")]
    LineNotThroughPoint,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("the curve is contained in the line")]
    CurveInLine,
    #[error("frame line lies in the tangent plane")]
    FrameInTangentPlane,
    #[error("incoming line equals the frame line")]
    IncomingEqualsFrame,
    #[error("billiard needs at least {0} pieces")]
    TooFewPieces(usize),
    #[error("operation has no exact result in this field")]
    NotExact,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
