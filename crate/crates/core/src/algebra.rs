//! Ordered pairs of vectors, the map `T(v, w) = [v.w, v x w]`, and the
//! vector identities that make merging pairs agree with the Hamilton product.

use serde::{Deserialize, Serialize};

use crate::quaternion::Quaternion;
use crate::vec3::Vec3;

/// An ordered pair `(first, second)` representing the class of all pairs
/// with the same dot and cross product.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct VectorPair {
    pub first: Vec3,
    pub second: Vec3,
}

impl VectorPair {
    pub const fn new(first: Vec3, second: Vec3) -> Self {
        VectorPair { first, second }
    }

    /// Both vectors zero.
    pub fn is_degenerate(&self) -> bool {
        self.first == Vec3::ZERO && self.second == Vec3::ZERO
    }

    /// The reversed pair `(second, first)`; its class is the conjugate.
    pub fn swapped(self) -> Self {
        VectorPair::new(self.second, self.first)
    }

    pub fn tmap(self) -> Quaternion {
        tmap(self)
    }
}

/// `T(v, w) = [v.w, v x w]`. Bilinear; `|T(v, w)| = |v| |w|`.
#[inline]
pub fn tmap(p: VectorPair) -> Quaternion {
    Quaternion::new(p.first.dot(p.second), p.first.cross(p.second))
}

/// Magnitude scale for comparing degree-2 quantities of two pairs.
fn pair_scale(p1: &VectorPair, p2: &VectorPair) -> f64 {
    let m1 = p1.first.norm() * p1.second.norm();
    let m2 = p2.first.norm() * p2.second.norm();
    1.0_f64.max(m1).max(m2)
}

/// Whether two pairs lie in the same class: dot products and cross products
/// agree within `tol * max(1, |v1||w1|, |v2||w2|)`.
pub fn pairs_equivalent(p1: VectorPair, p2: VectorPair, tol: f64) -> bool {
    debug_assert!(tol >= 0.0);
    let bound = tol * pair_scale(&p1, &p2);
    let (a, b) = (tmap(p1), tmap(p2));
    (a.s - b.s).abs() <= bound && (a.v - b.v).norm() <= bound
}

/// LHS - RHS of the three-vector identities
///
/// ```text
/// (A.C)(B.B) = (A.B)(B.C) - (A x B).(B x C)
/// (A x C)(B.B) = (A.B)(B x C) + (B.C)(A x B) + (B x C) x (A x B)
/// ```
///
/// Both residuals vanish in exact arithmetic for every `a, b, c`.
pub fn identity_residuals(a: Vec3, b: Vec3, c: Vec3) -> (f64, Vec3) {
    let bb = b.dot(b);
    let ab = a.dot(b);
    let bc = b.dot(c);
    let axb = a.cross(b);
    let bxc = b.cross(c);

    let scalar = a.dot(c) * bb - (ab * bc - axb.dot(bxc));
    let vector = a.cross(c) * bb - (ab * bxc + bc * axb + bxc.cross(axb));
    (scalar, vector)
}

/// Scale against which [`identity_residuals`] is measured: `max(1, |a||b|^2|c|)`.
pub fn identity_scale(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    1.0_f64.max(a.norm() * b.norm_squared() * c.norm())
}

/// Both sides of the Lagrange identity `(a x b).(c x d) = (a.c)(b.d) - (a.d)(b.c)`.
pub fn lbc_both_sides(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> (f64, f64) {
    let lhs = a.cross(b).dot(c.cross(d));
    let rhs = a.dot(c) * b.dot(d) - a.dot(d) * b.dot(c);
    (lhs, rhs)
}
