//! The double cover of the rotation group: a unit pair `(v, w)` maps to the
//! product of line reflections `rho_w rho_v`, a rotation about `v x w` by
//! twice the angle from `v` to `w`.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::algebra::{tmap, VectorPair};
use crate::error::Result;
use crate::quaternion::{quat_conjugate, quat_mul, Quaternion};
use crate::vec3::Vec3;
use crate::check_unit_vector;

/// Row-major 3x3 matrix. JSON form: array of row arrays.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat3 {
    pub rows: [[f64; 3]; 3],
}

/// A [`Mat3`] produced by one of the rotation constructors; orthogonal with
/// determinant one up to roundoff.
pub type RotationMatrix = Mat3;

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3 {
        rows: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub const fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    pub fn diag(a: f64, b: f64, c: f64) -> Self {
        Mat3::from_rows([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]])
    }

    /// `a bᵀ`
    pub fn outer(a: Vec3, b: Vec3) -> Self {
        let (a, b) = (a.to_array(), b.to_array());
        let mut rows = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                rows[i][j] = a[i] * b[j];
            }
        }
        Mat3 { rows }
    }

    pub fn from_columns(c0: Vec3, c1: Vec3, c2: Vec3) -> Self {
        Mat3::from_rows([[c0.x, c1.x, c2.x], [c0.y, c1.y, c2.y], [c0.z, c1.z, c2.z]])
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3::new(self.rows[0][j], self.rows[1][j], self.rows[2][j])
    }

    pub fn transpose(&self) -> Mat3 {
        let r = &self.rows;
        Mat3::from_rows([
            [r[0][0], r[1][0], r[2][0]],
            [r[0][1], r[1][1], r[2][1]],
            [r[0][2], r[1][2], r[2][2]],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.rows[0][0] + self.rows[1][1] + self.rows[2][2]
    }

    pub fn determinant(&self) -> f64 {
        let r = &self.rows;
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }

    pub fn apply(&self, x: Vec3) -> Vec3 {
        let r = &self.rows;
        Vec3::new(
            r[0][0] * x.x + r[0][1] * x.y + r[0][2] * x.z,
            r[1][0] * x.x + r[1][1] * x.y + r[1][2] * x.z,
            r[2][0] * x.x + r[2][1] * x.y + r[2][2] * x.z,
        )
    }

    pub fn scale(&self, k: f64) -> Mat3 {
        let mut out = *self;
        out.rows.iter_mut().flatten().for_each(|e| *e *= k);
        out
    }

    pub fn add(&self, rhs: &Mat3) -> Mat3 {
        let mut out = *self;
        for (o, r) in out.rows.iter_mut().flatten().zip(rhs.rows.iter().flatten()) {
            *o += r;
        }
        out
    }

    pub fn max_abs_diff(&self, rhs: &Mat3) -> f64 {
        self.rows
            .iter()
            .flatten()
            .zip(rhs.rows.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `max |RᵀR - I|` entrywise.
    pub fn orthogonality_error(&self) -> f64 {
        (self.transpose() * *self).max_abs_diff(&Mat3::IDENTITY)
    }

    /// Rotation angle in `[0, pi]` from the trace.
    pub fn rotation_angle(&self) -> f64 {
        ((self.trace() - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
    }
}

impl Mul for Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut rows = [[0.0; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).map(|k| self.rows[i][k] * rhs.rows[k][j]).sum();
            }
        }
        Mat3 { rows }
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;

    fn mul(self, x: Vec3) -> Vec3 {
        self.apply(x)
    }
}

/// The skew matrix `J_u` with `J_u x = u x x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossMatrix(pub Vec3);

impl CrossMatrix {
    pub fn matrix(&self) -> Mat3 {
        let u = self.0;
        Mat3::from_rows([[0.0, -u.z, u.y], [u.z, 0.0, -u.x], [-u.y, u.x, 0.0]])
    }

    pub fn apply(&self, x: Vec3) -> Vec3 {
        self.0.cross(x)
    }
}

/// `rho_u x = 2 (u.x) u - x`: reflection across the line through unit `u`
/// (a half turn about `u`).
pub fn reflect_line(u: Vec3, x: Vec3) -> Result<Vec3> {
    check_unit_vector(u)?;
    Ok(reflect_line_unchecked(u, x))
}

#[inline]
pub(crate) fn reflect_line_unchecked(u: Vec3, x: Vec3) -> Vec3 {
    2.0 * u.dot(x) * u - x
}

/// Matrix `2 u uᵀ - I` of [`reflect_line`].
pub fn line_reflection_matrix(u: Vec3) -> Result<Mat3> {
    check_unit_vector(u)?;
    Ok(Mat3::outer(u, u).scale(2.0).add(&Mat3::IDENTITY.scale(-1.0)))
}

/// `C(v, w) = rho_w rho_v` for unit `v`, `w`.
pub fn rotation_from_pair(v: Vec3, w: Vec3) -> Result<RotationMatrix> {
    check_unit_vector(v)?;
    check_unit_vector(w)?;
    Ok(rotation_from_pair_unchecked(v, w))
}

pub(crate) fn rotation_from_pair_unchecked(v: Vec3, w: Vec3) -> RotationMatrix {
    let image = |x: Vec3| reflect_line_unchecked(w, reflect_line_unchecked(v, x));
    Mat3::from_columns(image(Vec3::E1), image(Vec3::E2), image(Vec3::E3))
}

/// [`rotation_from_pair`] on a [`VectorPair`] of unit vectors.
pub fn rotation_of_pair(p: VectorPair) -> Result<RotationMatrix> {
    rotation_from_pair(p.first, p.second)
}

/// `R(q) = I + 2 s J_v + 2 J_v²` for unit `q = [s, v]`.
pub fn euler_rodrigues(q: Quaternion) -> Result<RotationMatrix> {
    q.check_unit()?;
    Ok(euler_rodrigues_unchecked(q))
}

pub(crate) fn euler_rodrigues_unchecked(q: Quaternion) -> RotationMatrix {
    let j = CrossMatrix(q.v).matrix();
    Mat3::IDENTITY.add(&j.scale(2.0 * q.s)).add(&(j * j).scale(2.0))
}

/// Vector part of `q [0, x] q*` for unit `q`.
pub fn conjugate_vector(q: Quaternion, x: Vec3) -> Result<Vec3> {
    q.check_unit()?;
    Ok(quat_mul(quat_mul(q, Quaternion::pure(x)), quat_conjugate(q)).v)
}

/// Unit quaternion of the unit pair `(v, w)`; same as `tmap` but checked.
pub fn unit_pair_quaternion(v: Vec3, w: Vec3) -> Result<Quaternion> {
    check_unit_vector(v)?;
    check_unit_vector(w)?;
    Ok(tmap(VectorPair::new(v, w)))
}
