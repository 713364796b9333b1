use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),
    #[error("point is not in the upper half-plane (y = {0})")]
    NotInUpperHalfPlane(f64),
    #[error("matrix determinant {0} is not positive")]
    DegenerateDeterminant(f64),
    #[error("boundary point coincides with a geodesic endpoint")]
    EndpointCoincidence,
    #[error("parabolic fixed point does not match the horocycle center")]
    CenterMismatch,
    #[error("isometry is not parabolic")]
    NotParabolic,
    #[error("parabolic does not preserve the horocycle (level drift {0})")]
    LevelNotPreserved(f64),
    #[error("vector is not tangent to the horocycle (level gap {0})")]
    NotTangent(f64),
    #[error("vector is tangent to the pair with negative orientation")]
    WrongOrientation,
    #[error("tangency point lies behind the basepoint (time {0})")]
    TangencyBehindBase(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precision exhausted at depth {depth} (determinant drift {drift})")]
    PrecisionExhausted { depth: usize, drift: f64 },
    #[error("construction invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
