//! Quaternions as `[scalar, vector]` elements of R x R^3.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vec3::Vec3;
use crate::UNIT_TOL;

/// `[s, v]` with `s` the scalar part and `v` the vector part.
///
/// JSON form: `{"s": number, "v": [x, y, z]}`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub s: f64,
    pub v: Vec3,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, Vec3::ZERO);
    pub const ONE: Quaternion = Quaternion::new(1.0, Vec3::ZERO);
    pub const I: Quaternion = Quaternion::new(0.0, Vec3::E1);
    pub const J: Quaternion = Quaternion::new(0.0, Vec3::E2);
    pub const K: Quaternion = Quaternion::new(0.0, Vec3::E3);

    #[inline]
    pub const fn new(s: f64, v: Vec3) -> Self {
        Quaternion { s, v }
    }

    /// Pure quaternion `[0, v]`.
    #[inline]
    pub const fn pure(v: Vec3) -> Self {
        Quaternion::new(0.0, v)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.s * self.s + self.v.norm_squared()
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Euclidean inner product on R^4.
    #[inline]
    pub fn dot(self, rhs: Quaternion) -> f64 {
        self.s * rhs.s + self.v.dot(rhs.v)
    }

    #[inline]
    pub fn conjugate(self) -> Quaternion {
        quat_conjugate(self)
    }

    pub fn normalized(self) -> Option<Quaternion> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self * (1.0 / n))
        } else {
            None
        }
    }

    pub fn is_zero(self) -> bool {
        self.norm_squared() == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.s.is_finite() && self.v.is_finite()
    }

    /// Largest absolute componentwise difference.
    pub fn max_abs_diff(self, rhs: Quaternion) -> f64 {
        (self.s - rhs.s).abs().max((self.v - rhs.v).max_abs())
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.s, self.v.x, self.v.y, self.v.z]
    }

    pub fn from_array([s, x, y, z]: [f64; 4]) -> Self {
        Quaternion::new(s, Vec3::new(x, y, z))
    }

    pub(crate) fn check_unit(self) -> Result<()> {
        let n2 = self.norm_squared();
        if (n2 - 1.0).abs() <= UNIT_TOL {
            Ok(())
        } else {
            Err(Error::NonUnitQuaternion { norm_squared: n2 })
        }
    }
}

/// Hamilton product `a b`.
///
/// In the pair-merging picture `a` is the class applied second (written
/// primed, `[q', q']`) and `b` the class applied first (`[q, q]`):
/// scalar `q q' - q.q'`, vector `q q' + q' q + q' x q`.
#[inline]
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion {
        s: a.s * b.s - a.v.dot(b.v),
        v: b.s * a.v + a.s * b.v + a.v.cross(b.v),
    }
}

/// `[s, -v]`. For a unit quaternion this is the inverse; as a pair class it
/// is the reversed pair.
#[inline]
pub fn quat_conjugate(a: Quaternion) -> Quaternion {
    Quaternion::new(a.s, -a.v)
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        quat_mul(self, rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, k: f64) -> Quaternion {
        Quaternion::new(self.s * k, self.v * k)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.s + rhs.s, self.v + rhs.v)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.s - rhs.s, self.v - rhs.v)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.s, -self.v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const MINUS_ONE: Quaternion = Quaternion::new(-1.0, Vec3::ZERO);

    #[test]
    fn hamilton_relations_are_exact() {
        assert_eq!(I * I, MINUS_ONE);
        assert_eq!(J * J, MINUS_ONE);
        assert_eq!(K * K, MINUS_ONE);
        assert_eq!(I * J * K, MINUS_ONE);
        assert_eq!(I * J, K);
        assert_eq!(J * I, -K);
        assert_eq!(J * K, I);
        assert_eq!(K * J, -I);
        assert_eq!(K * I, J);
        assert_eq!(I * K, -J);
    }

    #[test]
    fn one_is_two_sided_identity() {
        let b = Quaternion::new(0.3, Vec3::new(-1.0, 2.0, 0.5));
        assert_eq!(Quaternion::ONE * b, b);
        assert_eq!(b * Quaternion::ONE, b);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(K.conjugate(), Quaternion::new(0.0, -Vec3::E3));
        assert_eq!(Quaternion::ONE.conjugate(), Quaternion::ONE);
        let q = Quaternion::new(0.5, Vec3::new(0.5, 0.5, 0.5));
        let p = q * q.conjugate();
        assert!(p.max_abs_diff(Quaternion::ONE) < 1e-15);
    }

    #[test]
    fn json_form() {
        let text = serde_json::to_string(&K).unwrap();
        assert_eq!(text, r#"{"s":0.0,"v":[0.0,0.0,1.0]}"#);
        let back: Quaternion = serde_json::from_str(r#"{"s":1,"v":[0,2,3]}"#).unwrap();
        assert_eq!(back, Quaternion::new(1.0, Vec3::new(0.0, 2.0, 3.0)));
    }
}
