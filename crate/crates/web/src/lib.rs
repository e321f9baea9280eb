//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function is a thin wrapper over a plain Rust function of the
//! same name in [`demo`], which is what the native tests exercise.

use wasm_bindgen::prelude::*;

pub mod demo {
    use pairquat::{
        belt_point, belt_quaternion, conjugate_vector, euler_rodrigues, quat_mul, slerp_s2, slerp_s3, tmap, Error,
        Quaternion, Result, Vec3, VectorPair,
    };

    fn vec3(x: &[f64]) -> Result<Vec3> {
        match x {
            [a, b, c] => Ok(Vec3::new(*a, *b, *c)),
            _ => Err(Error::DimensionMismatch { left: 3, right: x.len() }),
        }
    }

    fn quat(x: &[f64]) -> Result<Quaternion> {
        match x {
            [s, a, b, c] => Ok(Quaternion::new(*s, Vec3::new(*a, *b, *c))),
            _ => Err(Error::DimensionMismatch { left: 4, right: x.len() }),
        }
    }

    fn unit(v: Vec3) -> Result<Vec3> {
        let norm_squared = v.norm_squared();
        if (norm_squared - 1.0).abs() <= pairquat::UNIT_TOL {
            Ok(v)
        } else {
            Err(Error::NonUnitVector { norm_squared })
        }
    }

    /// Point on the unit sphere under screen point `(x, y)` in `[-1, 1]^2`.
    /// Points outside the disk clamp to the silhouette.
    pub fn project_to_sphere(x: f64, y: f64) -> [f64; 3] {
        let r2 = x * x + y * y;
        if r2 >= 1.0 {
            let r = r2.sqrt();
            [x / r, y / r, 0.0]
        } else {
            [x, y, (1.0 - r2).sqrt()]
        }
    }

    /// Applies the rotation dragging `from` onto `to` after `orientation`.
    /// Returns the new unit quaternion followed by its 3x3 matrix, row-major.
    pub fn trackball_drag(orientation: &[f64], from: &[f64], to: &[f64]) -> Result<Vec<f64>> {
        let (q, u_i, u_f) = (quat(orientation)?, unit(vec3(from)?)?, unit(vec3(to)?)?);
        let mid = (u_i + u_f).normalized().ok_or(Error::AntipodalInputs)?;
        let drag = tmap(VectorPair::new(u_i, mid));
        let next = quat_mul(drag, q).normalized().ok_or(Error::ZeroQuaternion)?;
        let m = euler_rodrigues(next)?;
        let mut out = next.to_array().to_vec();
        out.extend(m.rows.iter().flatten());
        Ok(out)
    }

    pub const SLERP_ROW: usize = 12;

    /// `samples + 1` rows of `t`, the S^2 route, the S^3 route, and the image
    /// of e1 under the S^3 route.
    pub fn slerp_compare(a: &[f64], b: &[f64], samples: usize) -> Result<Vec<f64>> {
        let (a, b) = (quat(a)?, quat(b)?);
        if samples == 0 {
            return Err(Error::InvalidParameter("samples must be at least 1".into()));
        }
        let mut out = Vec::with_capacity((samples + 1) * SLERP_ROW);
        for k in 0..=samples {
            let t = k as f64 / samples as f64;
            let (q2, q3) = (slerp_s2(a, b, t)?, slerp_s3(a, b, t)?);
            out.push(t);
            out.extend(q2.to_array());
            out.extend(q3.to_array());
            out.extend(conjugate_vector(q3, Vec3::E1)?.to_array());
        }
        Ok(out)
    }

    pub const BELT_ROW: usize = 7;

    /// `ns + 1` rows of `e(s, t)` and `Q(s, t)` for `s` over one period.
    pub fn belt_loop(t: f64, ns: usize) -> Result<Vec<f64>> {
        if ns == 0 || !(0.0..=std::f64::consts::TAU).contains(&t) {
            return Err(Error::InvalidParameter(format!("belt loop needs ns >= 1 and t in [0, 2pi], got ns={ns}, t={t}")));
        }
        let mut out = Vec::with_capacity((ns + 1) * BELT_ROW);
        for k in 0..=ns {
            let s = std::f64::consts::TAU * k as f64 / ns as f64;
            out.extend(belt_point(s, t).to_array());
            out.extend(belt_quaternion(s, t).to_array());
        }
        Ok(out)
    }
}

fn js(err: pairquat::Error) -> JsError {
    JsError::new(&format!("{}: {err}", err.code()))
}

#[wasm_bindgen(js_name = projectToSphere)]
pub fn project_to_sphere(x: f64, y: f64) -> Vec<f64> {
    demo::project_to_sphere(x, y).to_vec()
}

#[wasm_bindgen(js_name = trackballDrag)]
pub fn trackball_drag(orientation: &[f64], from: &[f64], to: &[f64]) -> Result<Vec<f64>, JsError> {
    demo::trackball_drag(orientation, from, to).map_err(js)
}

#[wasm_bindgen(js_name = slerpCompare)]
pub fn slerp_compare(a: &[f64], b: &[f64], samples: usize) -> Result<Vec<f64>, JsError> {
    demo::slerp_compare(a, b, samples).map_err(js)
}

#[wasm_bindgen(js_name = beltLoop)]
pub fn belt_loop(t: f64, ns: usize) -> Result<Vec<f64>, JsError> {
    demo::belt_loop(t, ns).map_err(js)
}
