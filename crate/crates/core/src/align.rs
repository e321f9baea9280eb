//! The rotation carrying one unit vector onto another while fixing the
//! orthogonal complement of their span, in any dimension:
//!
//! ```text
//! R = I - 2 s sᵀ / (s.s) + 2 u_F u_Iᵀ,    s = u_I + u_F
//! ```
//!
//! `R = rho_{u_F} rho_s`, so `R⁻¹ e = rho_s(rho_{u_F} e)` needs no square
//! root when `rho_s` keeps the normalization implicit.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rotations::{reflect_line_unchecked, Mat3, RotationMatrix};
use crate::vec3::Vec3;
use crate::{check_unit_slice, check_unit_vector};

/// `s.s` at or below this rejects the input as antipodal.
pub const ANTIPODAL_TOL: f64 = 1e-12;

/// Row-major square matrix of any size `n >= 2`. JSON form: array of rows.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixN {
    n: usize,
    data: Vec<f64>,
}

impl MatrixN {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        MatrixN { n, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(MatrixN { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        self.data
            .chunks(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> MatrixN {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        MatrixN { n, data }
    }

    pub fn matmul(&self, rhs: &MatrixN) -> MatrixN {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        MatrixN { n, data }
    }

    pub fn max_abs_diff(&self, rhs: &MatrixN) -> f64 {
        assert_eq!(self.n, rhs.n);
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn orthogonality_error(&self) -> f64 {
        self.transpose().matmul(self).max_abs_diff(&MatrixN::identity(self.n))
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
                .unwrap();
            if a[pivot * n + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for i in col + 1..n {
                let f = a[i * n + col] / p;
                for j in col..n {
                    a[i * n + j] -= f * a[col * n + j];
                }
            }
        }
        det
    }
}

impl From<Mat3> for MatrixN {
    fn from(m: Mat3) -> Self {
        MatrixN { n: 3, data: m.rows.iter().flatten().copied().collect() }
    }
}

impl Serialize for MatrixN {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for row in self.data.chunks(self.n) {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

fn check_pair_slices(u_i: &[f64], u_f: &[f64]) -> Result<()> {
    if u_i.len() != u_f.len() {
        return Err(Error::DimensionMismatch { left: u_i.len(), right: u_f.len() });
    }
    if u_i.len() < 2 {
        return Err(Error::InvalidParameter(format!("dimension {} < 2", u_i.len())));
    }
    check_unit_slice(u_i)?;
    check_unit_slice(u_f)
}

/// The aligning rotation in dimension `n = u_i.len()`.
pub fn align_matrix(u_i: &[f64], u_f: &[f64]) -> Result<MatrixN> {
    check_pair_slices(u_i, u_f)?;
    let n = u_i.len();
    let s: Vec<f64> = u_i.iter().zip(u_f).map(|(a, b)| a + b).collect();
    let ss: f64 = s.iter().map(|x| x * x).sum();
    if ss <= ANTIPODAL_TOL {
        return Err(Error::AntipodalInputs);
    }
    let k = 2.0 / ss;
    let mut m = MatrixN::identity(n);
    for i in 0..n {
        for j in 0..n {
            m.data[i * n + j] += 2.0 * u_f[i] * u_i[j] - k * s[i] * s[j];
        }
    }
    Ok(m)
}

fn check_align3(u_i: Vec3, u_f: Vec3) -> Result<()> {
    check_unit_vector(u_i)?;
    check_unit_vector(u_f)?;
    if (u_i + u_f).norm_squared() <= ANTIPODAL_TOL {
        return Err(Error::AntipodalInputs);
    }
    Ok(())
}

/// Three-dimensional aligning rotation via [`align3_kernel`]
/// (18 multiplications, one division, no square roots).
pub fn align_matrix3(u_i: Vec3, u_f: Vec3) -> Result<RotationMatrix> {
    check_align3(u_i, u_f)?;
    Ok(Mat3::from_rows(align3_kernel(u_i.to_array(), u_f.to_array())))
}

/// The scalar operations [`align3_kernel`] is written against.
pub trait Real:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn one() -> Self;
    fn recip(self) -> Self;
    fn sqrt(self) -> Self;
}

impl Real for f64 {
    #[inline]
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn recip(self) -> Self {
        1.0 / self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
}

/// Alignment rotation for unit `u_i`, `u_f` with `u_f != -u_i`.
///
/// Operation count: the 9 products `u_F[i] u_I[j]` (whose diagonal sums to
/// `u_I.u_F`, giving `s.s = 2 + 2 u_I.u_F` for free), one reciprocal
/// `k = 2/(s.s) = 1/(1 + u_I.u_F)`, 3 products `t = k s`, and the 6 distinct
/// entries of the symmetric `t sᵀ`. Doubling is done by addition.
/// Total: 18 multiplications, 1 division.
pub fn align3_kernel<T: Real>(u_i: [T; 3], u_f: [T; 3]) -> [[T; 3]; 3] {
    let one = T::one();
    let mut p = [[one; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            p[i][j] = u_f[i] * u_i[j];
        }
    }
    let k = (one + p[0][0] + p[1][1] + p[2][2]).recip();
    let s = [u_i[0] + u_f[0], u_i[1] + u_f[1], u_i[2] + u_f[2]];
    let t = [k * s[0], k * s[1], k * s[2]];
    let ts01 = t[0] * s[1];
    let ts02 = t[0] * s[2];
    let ts12 = t[1] * s[2];
    let ts = [
        [t[0] * s[0], ts01, ts02],
        [ts01, t[1] * s[1], ts12],
        [ts02, ts12, t[2] * s[2]],
    ];
    let mut r = [[one; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let twice = p[i][j] + p[i][j];
            r[i][j] = if i == j { one + twice - ts[i][j] } else { twice - ts[i][j] };
        }
    }
    r
}

/// `R⁻¹ e = rho_s(rho_{u_F} e)` with `rho_s y = (2 (s.y)/(s.s)) s - y`.
pub fn transvection_apply_inverse(u_i: Vec3, u_f: Vec3, e: Vec3) -> Result<Vec3> {
    check_align3(u_i, u_f)?;
    Ok(transvection_apply_inverse_unchecked(u_i, u_f, e))
}

#[inline]
pub fn transvection_apply_inverse_unchecked(u_i: Vec3, u_f: Vec3, e: Vec3) -> Vec3 {
    let s = u_i + u_f;
    let y = reflect_line_unchecked(u_f, e);
    (2.0 * s.dot(y) / s.dot(s)) * s - y
}

/// Scalar wrapper that tallies arithmetic, for auditing kernel costs.
pub mod counting {
    use std::cell::Cell;
    use std::ops::{Add, Mul, Neg, Sub};

    use super::Real;

    #[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
    pub struct OpCounts {
        pub multiplications: u64,
        pub divisions: u64,
        pub square_roots: u64,
    }

    thread_local! {
        static COUNTS: Cell<OpCounts> = const { Cell::new(OpCounts { multiplications: 0, divisions: 0, square_roots: 0 }) };
    }

    fn bump(f: impl FnOnce(&mut OpCounts)) {
        COUNTS.with(|c| {
            let mut v = c.get();
            f(&mut v);
            c.set(v);
        });
    }

    /// Run `f` with fresh counters on this thread and return what it used.
    pub fn count_ops<R>(f: impl FnOnce() -> R) -> (R, OpCounts) {
        let saved = COUNTS.with(|c| c.replace(OpCounts::default()));
        let out = f();
        let used = COUNTS.with(|c| c.replace(saved));
        (out, used)
    }

    #[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
    pub struct Counted(pub f64);

    impl Add for Counted {
        type Output = Counted;
        fn add(self, rhs: Counted) -> Counted {
            Counted(self.0 + rhs.0)
        }
    }

    impl Sub for Counted {
        type Output = Counted;
        fn sub(self, rhs: Counted) -> Counted {
            Counted(self.0 - rhs.0)
        }
    }

    impl Neg for Counted {
        type Output = Counted;
        fn neg(self) -> Counted {
            Counted(-self.0)
        }
    }

    #[allow(clippy::suspicious_arithmetic_impl)]
    impl Mul for Counted {
        type Output = Counted;
        fn mul(self, rhs: Counted) -> Counted {
            bump(|c| c.multiplications += 1);
            Counted(self.0 * rhs.0)
        }
    }

    impl Real for Counted {
        fn one() -> Self {
            Counted(1.0)
        }
        fn recip(self) -> Self {
            bump(|c| c.divisions += 1);
            Counted(1.0 / self.0)
        }
        fn sqrt(self) -> Self {
            bump(|c| c.square_roots += 1);
            Counted(self.0.sqrt())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::counting::{count_ops, Counted, OpCounts};
    use super::*;

    #[test]
    fn e1_to_e2_is_quarter_turn() {
        let expected = Mat3::from_rows([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let r3 = align_matrix3(Vec3::E1, Vec3::E2).unwrap();
        assert_eq!(r3, expected);
        let rn = align_matrix(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(rn, MatrixN::from(expected));
    }

    #[test]
    fn equal_inputs_give_identity() {
        let u = Vec3::new(0.48, 0.6, 0.64);
        assert!(align_matrix3(u, u).unwrap().max_abs_diff(&Mat3::IDENTITY) < 1e-15);
        let v = [0.5, 0.5, 0.5, 0.5];
        assert!(align_matrix(&v, &v).unwrap().max_abs_diff(&MatrixN::identity(4)) < 1e-15);
    }

    #[test]
    fn errors() {
        assert_eq!(align_matrix3(Vec3::E1, -Vec3::E1), Err(Error::AntipodalInputs));
        assert_eq!(align_matrix(&[0.0, 1.0], &[0.0, -1.0]), Err(Error::AntipodalInputs));
        assert_eq!(
            align_matrix(&[1.0, 0.0], &[1.0, 0.0, 0.0]),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(matches!(align_matrix(&[1.0], &[1.0]), Err(Error::InvalidParameter(_))));
        assert!(matches!(align_matrix3(Vec3::E1, Vec3::new(0.0, 2.0, 0.0)), Err(Error::NonUnitVector { .. })));
        assert_eq!(transvection_apply_inverse(Vec3::E2, -Vec3::E2, Vec3::E1), Err(Error::AntipodalInputs));
    }

    #[test]
    fn kernel_operation_count() {
        let u_i = [Counted(0.6), Counted(0.0), Counted(0.8)];
        let u_f = [Counted(0.0), Counted(1.0), Counted(0.0)];
        let (r, ops) = count_ops(|| align3_kernel(u_i, u_f));
        assert_eq!(ops, OpCounts { multiplications: 18, divisions: 1, square_roots: 0 });
        let plain = align3_kernel([0.6, 0.0, 0.8], [0.0, 1.0, 0.0]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(r[i][j].0, plain[i][j]);
            }
        }
    }

    #[test]
    fn transvection_examples() {
        let u_i = Vec3::new(0.0, 0.6, 0.8);
        let u_f = Vec3::new(0.36, 0.48, -0.8);
        let back = transvection_apply_inverse(u_i, u_f, u_f).unwrap();
        assert!((back - u_i).norm() < 1e-15);
        assert_eq!(transvection_apply_inverse(Vec3::E1, Vec3::E2, Vec3::E3).unwrap(), Vec3::E3);
    }

    #[test]
    fn determinant_of_permutation() {
        let m = MatrixN::from_rows(&[vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(m.determinant(), -1.0);
        assert_eq!(MatrixN::identity(6).determinant(), 1.0);
    }
}
