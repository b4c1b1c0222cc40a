use thiserror::Error;

/// Failures raised by the geometry and search routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("side lengths must be positive and finite, got ({0}, {1}, {2})")]
    NonPositiveSide(f64, f64, f64),
    #[error("triangle inequality violated: longest side exceeds the other two by {excess} (slack {slack})")]
    TriangleInequalityViolated { slack: f64, excess: f64 },
    #[error("inputs must be positive and finite, got ({0}, {1})")]
    NonPositiveInput(f64, f64),
    #[error("point ({0}, {1}) is not strictly interior")]
    NotInterior(f64, f64),
    #[error("degenerate vertex frame")]
    SingularFrame,
    #[error("({b}, {c}) lies outside the normalized shape region")]
    OutsideRegion { b: f64, c: f64 },
    #[error("sampled fractions leave a gap of {gap} (continuity bound {bound}); sampling too coarse")]
    GapDetected { gap: f64, bound: f64 },
    #[error("polygon is not strictly convex at vertex {0}")]
    NotConvex(usize),
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("duplicate vertex at index {0}")]
    DuplicateVertex(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPositiveSide(..) => "NonPositiveSide",
            Error::TriangleInequalityViolated { .. } => "TriangleInequalityViolated",
            Error::NonPositiveInput(..) => "NonPositiveInput",
            Error::NotInterior(..) => "NotInterior",
            Error::SingularFrame => "SingularFrame",
            Error::OutsideRegion { .. } => "OutsideRegion",
            Error::GapDetected { .. } => "GapDetected",
            Error::NotConvex(_) => "NotConvex",
            Error::TooFewVertices(_) => "TooFewVertices",
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
