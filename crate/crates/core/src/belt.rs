//! The belt-trick deformation: a family of closed loops `e(s, t)` on S^2
//! and the induced loops of unit quaternions `Q(s, t) = T(e1, e(s, t))` and
//! rotations `R(s, t) = C(e1, e(s, t))`.
//!
//! At `t = 0` the loop is a full turn around the e1-e2 equator, evaluating
//! to `-cos(s) e1 + sin(s) e2`; its rotation loop is a double turn about e3.
//! At `t = 2 pi` the loop has shrunk to the constant point `e1` and the
//! rotation loop to the identity. The point `e(0, t) = -cos(t/2) e1 +
//! sin(t/2) e3` moves with `t`, so this is a free (unbased) homotopy.

use std::f64::consts::TAU;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::algebra::{tmap, VectorPair};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::rotations::{rotation_from_pair_unchecked, RotationMatrix};
use crate::vec3::Vec3;

/// One sample of the homotopy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeltFrame {
    pub s: f64,
    pub t: f64,
    pub e: Vec3,
    pub q: Quaternion,
    pub r: RotationMatrix,
}

impl BeltFrame {
    /// Frame at `(s, t)`; `t` must lie in `[0, 2 pi]`.
    pub fn at(s: f64, t: f64) -> Result<Self> {
        if !(0.0..=TAU).contains(&t) || !s.is_finite() {
            return Err(Error::InvalidParameter(format!("belt parameter t = {t} outside [0, 2pi]")));
        }
        Ok(Self::eval(s, t))
    }

    fn eval(s: f64, t: f64) -> Self {
        let e = belt_point(s, t);
        BeltFrame {
            s,
            t,
            e,
            q: tmap(VectorPair::new(Vec3::E1, e)),
            r: rotation_from_pair_unchecked(Vec3::E1, e),
        }
    }
}

/// `e(s,t) = sin(t/4) (sin(t/4) e1 + cos(t/4) e3)
///         + cos(t/4) (cos(s) (-cos(t/4) e1 + sin(t/4) e3) + sin(s) e2)`
pub fn belt_point(s: f64, t: f64) -> Vec3 {
    let (sq, cq) = (t / 4.0).sin_cos();
    let (ss, cs) = s.sin_cos();
    let normal = Vec3::new(sq, 0.0, cq);
    let in_plane = Vec3::new(-cq, 0.0, sq);
    sq * normal + cq * (cs * in_plane + ss * Vec3::E2)
}

pub fn belt_quaternion(s: f64, t: f64) -> Quaternion {
    tmap(VectorPair::new(Vec3::E1, belt_point(s, t)))
}

pub fn belt_rotation(s: f64, t: f64) -> RotationMatrix {
    rotation_from_pair_unchecked(Vec3::E1, belt_point(s, t))
}

/// `(ns + 1) x (nt + 1)` frames on the uniform grid over `[0, 2pi]^2`,
/// `t` outer and `s` inner.
pub fn belt_frames(ns: usize, nt: usize) -> Result<Vec<BeltFrame>> {
    if ns == 0 || nt == 0 {
        return Err(Error::InvalidGrid { ns, nt });
    }
    let mut frames = Vec::with_capacity((ns + 1) * (nt + 1));
    for it in 0..=nt {
        let t = TAU * it as f64 / nt as f64;
        for is in 0..=ns {
            let s = TAU * is as f64 / ns as f64;
            frames.push(BeltFrame::eval(s, t));
        }
    }
    Ok(frames)
}

pub const CSV_HEADER: &str = "s,t,ex,ey,ez,qs,qx,qy,qz,r11,r12,r13,r21,r22,r23,r31,r32,r33";

fn csv_number(x: f64) -> String {
    let x = x + 0.0;
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x}")
    } else {
        format!("{x:?}")
    }
}

/// Header line then one line per frame.
pub fn write_csv<W: Write>(frames: &[BeltFrame], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for f in frames {
        let mut fields = vec![f.s, f.t, f.e.x, f.e.y, f.e.z, f.q.s, f.q.v.x, f.q.v.y, f.q.v.z];
        fields.extend(f.r.rows.iter().flatten());
        let line: Vec<String> = fields.iter().map(|&x| csv_number(x)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}
