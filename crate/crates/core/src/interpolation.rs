//! Spherical linear interpolation of unit quaternions, computed either on
//! S^3 directly or entirely from a pair of vectors on S^2.
//!
//! If `a = T(v, w)` and `b = T(v, w')` share their first element then
//! `a.b = w.w'` (Lagrange identity), so both the angle and the blend can be
//! formed from `w` and `w'` alone.

use serde::{Deserialize, Serialize};

use crate::algebra::{tmap, VectorPair};
use crate::construction::{overlap_unit_unchecked, rep_with_first_unchecked};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::vec3::Vec3;
use crate::UNIT_TOL;

/// Below this angle the sine ratios are replaced by `1 - t`, `t`.
pub const SMALL_ANGLE: f64 = 1e-6;

/// Blend weights `c(t) = sin((1-t) omega)/sin(omega)`, `c'(t) = sin(t omega)/sin(omega)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SlerpCoefficients {
    pub c: f64,
    pub c_prime: f64,
    pub omega: f64,
}

impl SlerpCoefficients {
    /// Weights for angle `omega` (radians) at parameter `t`.
    pub fn new(omega: f64, t: f64) -> Self {
        if omega < SMALL_ANGLE {
            return SlerpCoefficients { c: 1.0 - t, c_prime: t, omega };
        }
        let sin = omega.sin();
        SlerpCoefficients {
            c: ((1.0 - t) * omega).sin() / sin,
            c_prime: (t * omega).sin() / sin,
            omega,
        }
    }

    /// Weights from the cosine of the angle.
    pub fn from_cos(cos: f64, t: f64) -> Self {
        Self::new(cos.clamp(-1.0, 1.0).acos(), t)
    }

    pub fn is_linear_fallback(&self) -> bool {
        self.omega < SMALL_ANGLE
    }
}

fn check_inputs(a: Quaternion, b: Quaternion) -> Result<()> {
    a.check_unit()?;
    b.check_unit()?;
    if a.dot(b) <= -1.0 + UNIT_TOL {
        return Err(Error::AntipodalQuaternions);
    }
    Ok(())
}

/// Great-circle interpolation from `a` (t = 0) to `b` (t = 1).
pub fn slerp_s3(a: Quaternion, b: Quaternion, t: f64) -> Result<Quaternion> {
    check_inputs(a, b)?;
    let k = SlerpCoefficients::from_cos(a.dot(b), t);
    let q = a * k.c + b * k.c_prime;
    Ok(if k.is_linear_fallback() { q.normalized().unwrap_or(a) } else { q })
}

/// The pair representatives `(u, w)`, `(u, w')` of `a` and `b` sharing the
/// first element `u` used by [`slerp_s2`].
pub fn shared_first_pairs(a: Quaternion, b: Quaternion) -> Result<(VectorPair, VectorPair)> {
    check_inputs(a, b)?;
    let u = overlap_unit_unchecked(a.v, b.v).u;
    Ok((rep_with_first_unchecked(a, u), rep_with_first_unchecked(b, u)))
}

/// Same curve as [`slerp_s3`], evaluated as `T(u, c(t) w + c'(t) w')` with
/// the angle taken from `w.w'`.
pub fn slerp_s2(a: Quaternion, b: Quaternion, t: f64) -> Result<Quaternion> {
    let (p, p2) = shared_first_pairs(a, b)?;
    let (u, w, w2) = (p.first, p.second, p2.second);
    let k = SlerpCoefficients::from_cos(w.dot(w2), t);
    let mut x: Vec3 = k.c * w + k.c_prime * w2;
    if k.is_linear_fallback() {
        x = x.normalized().unwrap_or(w);
    }
    Ok(tmap(VectorPair::new(u, x)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlerpMethod {
    S2,
    S3,
}

impl SlerpMethod {
    pub fn eval(self, a: Quaternion, b: Quaternion, t: f64) -> Result<Quaternion> {
        match self {
            SlerpMethod::S2 => slerp_s2(a, b, t),
            SlerpMethod::S3 => slerp_s3(a, b, t),
        }
    }
}

impl std::str::FromStr for SlerpMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s2" => Ok(SlerpMethod::S2),
            "s3" => Ok(SlerpMethod::S3),
            other => Err(Error::InvalidParameter(format!("unknown slerp method {other:?}"))),
        }
    }
}

/// `samples + 1` points at `t = 0, 1/samples, ..., 1`.
pub fn slerp_path(method: SlerpMethod, a: Quaternion, b: Quaternion, samples: usize) -> Result<Vec<(f64, Quaternion)>> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    (0..=samples)
        .map(|i| {
            let t = i as f64 / samples as f64;
            method.eval(a, b, t).map(|q| (t, q))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn unit(s: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(s, Vec3::new(x, y, z)).normalized().unwrap()
    }

    #[test]
    fn coefficient_endpoints() {
        let k0 = SlerpCoefficients::new(1.3, 0.0);
        let k1 = SlerpCoefficients::new(1.3, 1.0);
        assert_eq!((k0.c, k0.c_prime), (1.0, 0.0));
        assert!((k1.c).abs() < 1e-16 && (k1.c_prime - 1.0).abs() < 1e-15);
    }

    #[test]
    fn midpoint_of_i_and_j() {
        let expected = Quaternion::new(0.0, Vec3::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0));
        for m in [SlerpMethod::S3, SlerpMethod::S2] {
            let q = m.eval(Quaternion::I, Quaternion::J, 0.5).unwrap();
            assert!(q.max_abs_diff(expected) < 1e-15, "{m:?}: {q:?}");
        }
    }

    #[test]
    fn endpoints_both_methods() {
        let a = unit(0.3, -0.2, 0.9, 0.1);
        let b = unit(-0.1, 0.5, 0.2, 0.8);
        for m in [SlerpMethod::S3, SlerpMethod::S2] {
            assert!(m.eval(a, b, 0.0).unwrap().max_abs_diff(a) < 1e-14);
            assert!(m.eval(a, b, 1.0).unwrap().max_abs_diff(b) < 1e-14);
        }
    }

    #[test]
    fn shared_pairs_transfer_dot_product() {
        let a = unit(0.3, -0.2, 0.9, 0.1);
        let b = unit(-0.1, 0.5, 0.2, 0.8);
        let (p, p2) = shared_first_pairs(a, b).unwrap();
        assert_eq!(p.first, p2.first);
        assert!((p.second.dot(p2.second) - a.dot(b)).abs() < 1e-15);
    }

    #[test]
    fn small_angle_fallback_is_continuous() {
        let a = unit(1.0, 0.1, 0.0, 0.0);
        let b = unit(1.0, 0.1 + 1e-8, 0.0, 0.0);
        for m in [SlerpMethod::S3, SlerpMethod::S2] {
            let q = m.eval(a, b, 0.5).unwrap();
            assert!((q.norm() - 1.0).abs() < 1e-15);
            assert!(q.max_abs_diff(a) < 1e-8);
        }
        assert!(slerp_s2(a, a, 0.3).unwrap().max_abs_diff(a) < 1e-15);
    }

    #[test]
    fn rejects_antipodal_and_non_unit() {
        let a = unit(0.3, -0.2, 0.9, 0.1);
        assert_eq!(slerp_s3(a, -a, 0.5), Err(Error::AntipodalQuaternions));
        assert_eq!(slerp_s2(a, -a, 0.5), Err(Error::AntipodalQuaternions));
        assert!(matches!(slerp_s3(a * 2.0, a, 0.5), Err(Error::NonUnitQuaternion { .. })));
    }

    #[test]
    fn path_has_n_plus_one_samples() {
        let path = slerp_path(SlerpMethod::S3, Quaternion::ONE, Quaternion::K, 4).unwrap();
        assert_eq!(path.len(), 5);
        assert_eq!(path[0].0, 0.0);
        assert_eq!(path[4].0, 1.0);
        assert!(slerp_path(SlerpMethod::S3, Quaternion::ONE, Quaternion::K, 0).is_err());
    }
}
