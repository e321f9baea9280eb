//! Quaternions built from classes of ordered pairs of 3-vectors.
//!
//! A pair `(v, w)` maps to the quaternion `T(v, w) = [v.w, v x w]`; pairs
//! with equal dot and cross products form one class. Classes compose by
//! sliding representatives until the inner vectors coincide and merging the
//! outer ones, which reproduces the Hamilton product. From there:
//!
//! - [`interpolation`]: SLERP evaluated on S^3 or entirely on S^2,
//! - [`rotations`]: unit pairs as products of two line reflections,
//! - [`align`]: the square-root-free rotation taking one unit vector to
//!   another, in any dimension,
//! - [`belt`]: the explicit contraction of the double-turn rotation loop.

pub mod algebra;
pub mod align;
pub mod belt;
pub mod construction;
pub mod error;
pub mod interpolation;
pub mod quaternion;
pub mod rotations;
pub mod vec3;

pub use algebra::{identity_residuals, identity_scale, lbc_both_sides, pairs_equivalent, tmap, VectorPair};
pub use align::{align_matrix, align_matrix3, transvection_apply_inverse, MatrixN};
pub use belt::{belt_frames, belt_point, belt_quaternion, belt_rotation, BeltFrame};
pub use construction::{linear_combine, merge, overlap_unit, rep_with_first, rep_with_second, OverlapChoice};
pub use error::{Error, Result};
pub use interpolation::{slerp_s2, slerp_s3, SlerpCoefficients, SlerpMethod};
pub use quaternion::{quat_conjugate, quat_mul, Quaternion};
pub use rotations::{
    conjugate_vector, euler_rodrigues, reflect_line, rotation_from_pair, CrossMatrix, Mat3, RotationMatrix,
};
pub use vec3::Vec3;

/// Unit-length preconditions accept `| |u|^2 - 1 | <= UNIT_TOL`.
pub const UNIT_TOL: f64 = 1e-9;

pub(crate) fn check_unit_vector(u: Vec3) -> Result<()> {
    let n2 = u.norm_squared();
    if (n2 - 1.0).abs() <= UNIT_TOL {
        Ok(())
    } else {
        Err(Error::NonUnitVector { norm_squared: n2 })
    }
}

pub(crate) fn check_unit_slice(u: &[f64]) -> Result<()> {
    let n2: f64 = u.iter().map(|x| x * x).sum();
    if (n2 - 1.0).abs() <= UNIT_TOL {
        Ok(())
    } else {
        Err(Error::NonUnitVector { norm_squared: n2 })
    }
}
