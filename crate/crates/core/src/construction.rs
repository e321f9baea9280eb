//! Explicit representatives of pair classes and the geometric operations
//! built from them: merging two classes through a shared unit vector, and
//! adding classes that share a first element.
//!
//! Every nonzero class `[s, q]` contains, for each unit `u` orthogonal to
//! `q`, exactly one pair with `u` as first element and one with `u` as second
//! element:
//!
//! ```text
//! (s u + u x q, u)    and    (u, s u - u x q)
//! ```
//!
//! Two classes always share such a `u` (any unit vector orthogonal to both
//! vector parts), which is what makes merging possible.

use serde::{Deserialize, Serialize};

use crate::algebra::{tmap, VectorPair};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::vec3::Vec3;
use crate::{check_unit_vector, UNIT_TOL};

/// Relative threshold below which two vector parts count as parallel.
pub const PARALLEL_TOL: f64 = 1e-9;

/// A unit vector usable as the shared endpoint of two classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverlapChoice {
    pub u: Vec3,
    /// The vector parts were parallel (or zero) so `u` came from the fallback.
    pub degenerate: bool,
}

fn check_orthogonal(q: Quaternion, u: Vec3) -> Result<()> {
    let dot = u.dot(q.v);
    if dot.abs() <= UNIT_TOL * 1.0_f64.max(q.v.norm()) {
        Ok(())
    } else {
        Err(Error::NotOrthogonal { dot })
    }
}

fn check_representable(q: Quaternion, u: Vec3) -> Result<()> {
    if q.is_zero() {
        return Err(Error::ZeroQuaternion);
    }
    check_unit_vector(u)?;
    check_orthogonal(q, u)
}

/// The pair `(v, u)` of class `q` whose second element is the unit vector `u`.
pub fn rep_with_second(q: Quaternion, u: Vec3) -> Result<VectorPair> {
    check_representable(q, u)?;
    Ok(rep_with_second_unchecked(q, u))
}

/// The pair `(u, w)` of class `q` whose first element is the unit vector `u`.
pub fn rep_with_first(q: Quaternion, u: Vec3) -> Result<VectorPair> {
    check_representable(q, u)?;
    Ok(rep_with_first_unchecked(q, u))
}

#[inline]
pub(crate) fn rep_with_second_unchecked(q: Quaternion, u: Vec3) -> VectorPair {
    VectorPair::new(q.s * u + u.cross(q.v), u)
}

#[inline]
pub(crate) fn rep_with_first_unchecked(q: Quaternion, u: Vec3) -> VectorPair {
    VectorPair::new(u, q.s * u - u.cross(q.v))
}

/// Unit vector orthogonal to `n`, built from the coordinate axis on which
/// `n` has the smallest absolute component. `n` must be nonzero.
fn orthogonal_unit(n: Vec3) -> Vec3 {
    let c = [n.x.abs(), n.y.abs(), n.z.abs()];
    let mut axis = 0;
    for i in 1..3 {
        if c[i] < c[axis] {
            axis = i;
        }
    }
    let e = Vec3::basis(axis);
    let t = e - n * (n.dot(e) / n.norm_squared());
    t.normalized().expect("axis with smallest component is never parallel to n")
}

/// A unit vector orthogonal to the vector parts of both `a` and `b`.
pub fn overlap_unit(a: Quaternion, b: Quaternion) -> Result<OverlapChoice> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroQuaternion);
    }
    Ok(overlap_unit_unchecked(a.v, b.v))
}

pub(crate) fn overlap_unit_unchecked(av: Vec3, bv: Vec3) -> OverlapChoice {
    let c = av.cross(bv);
    let cn = c.norm();
    if cn > PARALLEL_TOL * av.norm() * bv.norm() {
        return OverlapChoice { u: c / cn, degenerate: false };
    }
    let n = if av.norm_squared() >= bv.norm_squared() { av } else { bv };
    let u = if n == Vec3::ZERO { Vec3::E1 } else { orthogonal_unit(n) };
    OverlapChoice { u, degenerate: true }
}

/// Geometric composition `left o right`: re-represent `right` so that it
/// ends at a shared unit vector `u` and `left` so that it starts there, then
/// join the outer vectors. The result represents `tmap(left) * tmap(right)`.
pub fn merge(left: VectorPair, right: VectorPair) -> Result<VectorPair> {
    if left.is_degenerate() || right.is_degenerate() {
        return Err(Error::DegeneratePair);
    }
    let ql = tmap(left);
    let qr = tmap(right);
    if ql.is_zero() || qr.is_zero() {
        return Err(Error::ZeroQuaternion);
    }
    let OverlapChoice { u, .. } = overlap_unit_unchecked(ql.v, qr.v);
    let r = rep_with_second_unchecked(qr, u);
    let l = rep_with_first_unchecked(ql, u);
    debug_assert_eq!(r.second, l.first);
    Ok(VectorPair::new(r.first, l.second))
}

/// `ca * a + cb * b`, computed as `tmap(u, ca w + cb w')` from the
/// representatives `(u, w)` and `(u, w')` sharing their first element.
pub fn linear_combine(a: Quaternion, b: Quaternion, ca: f64, cb: f64) -> Result<Quaternion> {
    let OverlapChoice { u, .. } = overlap_unit(a, b)?;
    let w = rep_with_first_unchecked(a, u).second;
    let w2 = rep_with_first_unchecked(b, u).second;
    Ok(tmap(VectorPair::new(u, ca * w + cb * w2)))
}

/// Rotate both vectors of `p` by `angle` about the axis of `first x second`.
/// The class is unchanged.
pub fn rotate_in_class(p: VectorPair, angle: f64) -> VectorPair {
    let axis = p
        .first
        .cross(p.second)
        .normalized()
        .unwrap_or_else(|| overlap_unit_unchecked(p.first, p.second).u);
    let (sin, cos) = angle.sin_cos();
    let rot = |x: Vec3| cos * x + sin * axis.cross(x) + (1.0 - cos) * axis.dot(x) * axis;
    VectorPair::new(rot(p.first), rot(p.second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::pairs_equivalent;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol * 1.0_f64.max(a.norm()).max(b.norm())
    }

    #[test]
    fn rep_with_second_examples() {
        let p = rep_with_second(Quaternion::K, Vec3::E1).unwrap();
        assert_eq!(p, VectorPair::new(-Vec3::E2, Vec3::E1));
        assert_eq!(tmap(p), Quaternion::K);

        let u = Vec3::new(0.0, 0.6, 0.8);
        assert_eq!(rep_with_second(Quaternion::ONE, u).unwrap(), VectorPair::new(u, u));

        let r = 3.0;
        let h = std::f64::consts::FRAC_1_SQRT_2 * r;
        let q = Quaternion::new(h, Vec3::new(0.0, 0.0, h));
        let p = rep_with_second(q, Vec3::E1).unwrap();
        assert!((p.first.dot(Vec3::E1) - h).abs() < 1e-12);
        assert!((p.first.norm() - r).abs() < 1e-12);
        assert!(close(tmap(p), q, 1e-15));
    }

    #[test]
    fn rep_with_first_examples() {
        let p = rep_with_first(Quaternion::K, Vec3::E1).unwrap();
        assert_eq!(p, VectorPair::new(Vec3::E1, Vec3::E2));
        let u = Vec3::E3;
        assert_eq!(rep_with_first(Quaternion::ONE, u).unwrap(), VectorPair::new(u, u));
    }

    #[test]
    fn rep_errors() {
        assert_eq!(rep_with_first(Quaternion::ZERO, Vec3::E1), Err(Error::ZeroQuaternion));
        assert!(matches!(
            rep_with_first(Quaternion::K, Vec3::new(2.0, 0.0, 0.0)),
            Err(Error::NonUnitVector { .. })
        ));
        assert!(matches!(
            rep_with_second(Quaternion::K, Vec3::E3),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn overlap_examples() {
        let o = overlap_unit(Quaternion::K, Quaternion::I).unwrap();
        assert!(!o.degenerate);
        assert_eq!(o.u, Vec3::E2);

        let o = overlap_unit(Quaternion::ONE, Quaternion::ONE).unwrap();
        assert!(o.degenerate);
        assert_eq!(o.u, Vec3::E1);

        let a = Quaternion::new(0.2, Vec3::new(1.0, 2.0, 3.0));
        let b = Quaternion::new(-1.0, Vec3::new(-2.0, -4.0, -6.0));
        let o = overlap_unit(a, b).unwrap();
        assert!(o.degenerate);
        assert!((o.u.norm() - 1.0).abs() < 1e-14);
        assert!(o.u.dot(a.v).abs() < 1e-12);
        assert!(o.u.dot(b.v).abs() < 1e-12);

        assert_eq!(overlap_unit(Quaternion::ZERO, a), Err(Error::ZeroQuaternion));
    }

    #[test]
    fn merge_j_then_i_is_minus_k() {
        let j = VectorPair::new(Vec3::E3, Vec3::E1);
        let i = VectorPair::new(Vec3::E2, Vec3::E3);
        assert_eq!(tmap(j), Quaternion::J);
        assert_eq!(tmap(i), Quaternion::I);
        let m = merge(j, i).unwrap();
        assert_eq!(tmap(m), -Quaternion::K);
    }

    #[test]
    fn merge_with_reverse_is_identity() {
        let v = Vec3::new(0.36, 0.48, 0.8);
        let w = Vec3::new(0.0, 0.6, -0.8);
        let p = VectorPair::new(v, w);
        let m = merge(p, p.swapped()).unwrap();
        assert!(close(tmap(m), Quaternion::ONE, 1e-15));
    }

    #[test]
    fn merge_rejects_degenerate() {
        let z = VectorPair::new(Vec3::ZERO, Vec3::ZERO);
        let p = VectorPair::new(Vec3::E1, Vec3::E2);
        assert_eq!(merge(z, p), Err(Error::DegeneratePair));
        assert_eq!(merge(p, z), Err(Error::DegeneratePair));
        assert_eq!(merge(p, VectorPair::new(Vec3::E1, Vec3::ZERO)), Err(Error::ZeroQuaternion));
    }

    #[test]
    fn merge_of_parallel_classes() {
        let a = VectorPair::new(Vec3::new(1.0, 1.0, 0.0), Vec3::E1);
        let b = VectorPair::new(Vec3::E1, Vec3::new(2.0, 1.0, 0.0));
        let m = merge(a, b).unwrap();
        assert!(close(tmap(m), tmap(a) * tmap(b), 1e-15));
    }

    #[test]
    fn linear_combine_examples() {
        let q = linear_combine(Quaternion::I, Quaternion::J, 1.0, 1.0).unwrap();
        assert!(close(q, Quaternion::new(0.0, Vec3::new(1.0, 1.0, 0.0)), 1e-15));
        let a = Quaternion::new(0.5, Vec3::new(-1.0, 0.25, 2.0));
        let b = Quaternion::new(-0.3, Vec3::new(0.7, 0.7, -0.1));
        let q = linear_combine(a, b, 2.5, 0.0).unwrap();
        assert!(close(q, a * 2.5, 1e-15));
        let q = linear_combine(a, b, 0.3, 0.7).unwrap();
        assert!(close(q, a * 0.3 + b * 0.7, 1e-15));
    }

    #[test]
    fn rotation_in_class_keeps_class() {
        let p = VectorPair::new(Vec3::new(1.0, 2.0, -0.5), Vec3::new(-0.3, 0.4, 2.0));
        let r = rotate_in_class(p, 1.234);
        assert!(pairs_equivalent(p, r, 1e-14));
        assert!((r.first - p.first).norm() > 0.1);
    }
}
