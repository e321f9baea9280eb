use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector is not unit length (|u|^2 = {norm_squared})")]
    NonUnitVector { norm_squared: f64 },

    #[error("vector is not orthogonal to the quaternion's vector part (dot = {dot})")]
    NotOrthogonal { dot: f64 },

    #[error("zero quaternion has no pair representative")]
    ZeroQuaternion,

    #[error("pair has both vectors zero")]
    DegeneratePair,

    #[error("quaternion is not unit length (|q|^2 = {norm_squared})")]
    NonUnitQuaternion { norm_squared: f64 },

    #[error("antipodal unit vectors: the aligning rotation is not unique")]
    AntipodalInputs,

    #[error("antipodal quaternions: no unique geodesic")]
    AntipodalQuaternions,

    #[error("dimension mismatch ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid sampling grid ({ns} x {nt})")]
    InvalidGrid { ns: usize, nt: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonUnitVector { .. } => "NonUnitVector",
            Error::NotOrthogonal { .. } => "NotOrthogonal",
            Error::ZeroQuaternion => "ZeroQuaternion",
            Error::DegeneratePair => "DegeneratePair",
            Error::NonUnitQuaternion { .. } => "NonUnitQuaternion",
            Error::AntipodalInputs => "AntipodalInputs",
            Error::AntipodalQuaternions => "AntipodalQuaternions",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidGrid { .. } => "InvalidGrid",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
