use thiserror::Error;

/// Errors raised by the geometric operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vector is zero or not finite")]
    ZeroVector,

    #[error("points are equal or antipodal; no unique great circle")]
    DegeneratePair,

    #[error("point is not on the great circle (|p·n| = {0:e})")]
    OffCircle(f64),

    #[error("cross ratio is 0/0: a numerator and a denominator sine both vanish")]
    AllDegenerate,

    #[error("point lies outside the open hemisphere of chart {0}")]
    OutsideHemisphere(String),

    #[error("point lies on a coordinate circle")]
    OnCoordinateCircle,

    #[error("great circle misses the {0} boundary")]
    NoIntersection(&'static str),

    #[error("point is not in the region between the two simplices")]
    NotInOmega,

    #[error("points are not causally related")]
    NotRelated,

    #[error("independent evaluations disagree: {primary} vs {check}")]
    InternalMismatch { primary: f64, check: f64 },

    #[error("input must be strictly positive")]
    NonPositiveInput,

    #[error("point lies outside the required chart region")]
    OutOfRegion,

    #[error("base point is not strictly inside the quadrant")]
    BaseOutsideQuadrant,

    #[error("bodies are not in good position")]
    NotInGoodPosition,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
