//! Timing harness for the rotation kernels behind `pairquat bench`.
//!
//! Every kernel consumes the same seeded stream of unit-vector pairs. The
//! checksum is taken over one pass of that stream, so it depends on the seed
//! only. Times are the median of several batches.

use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use pairquat::align::{align3_kernel, counting, transvection_apply_inverse_unchecked};
use pairquat::{align_matrix, euler_rodrigues, quat_mul, rotation_from_pair, tmap, Mat3, Vec3, VectorPair};

use crate::sampling::Sampler;

const STREAM_LEN: usize = 256;
const BATCHES: usize = 9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub kernel: &'static str,
    pub iterations: usize,
    pub ns_per_op: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplications: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisions: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square_roots: Option<u64>,
    /// FNV-1a over the bit patterns of one pass of outputs, as hex.
    pub checksum: String,
}

struct Input {
    u_i: Vec3,
    u_f: Vec3,
    e: Vec3,
}

fn input_stream(seed: u64) -> Vec<Input> {
    let mut r = Sampler::new(seed);
    let mut out = Vec::with_capacity(STREAM_LEN);
    while out.len() < STREAM_LEN {
        let (u_i, u_f, e) = (r.unit3(), r.unit3(), r.vec3());
        if (u_i + u_f).norm_squared() > 1e-6 {
            out.push(Input { u_i, u_f, e });
        }
    }
    out
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn push(&mut self, x: f64) {
        for b in x.to_bits().to_le_bytes() {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    fn hex(&self) -> String {
        format!("{:016x}", self.0)
    }
}

fn mat_values(m: &Mat3) -> impl Iterator<Item = f64> + '_ {
    m.rows.iter().flatten().copied()
}

type Kernel = fn(&Input) -> [f64; 9];

fn flat(m: Mat3) -> [f64; 9] {
    let mut out = [0.0; 9];
    out.iter_mut().zip(mat_values(&m)).for_each(|(o, v)| *o = v);
    out
}

fn k_align3(x: &Input) -> [f64; 9] {
    flat(Mat3::from_rows(align3_kernel(x.u_i.to_array(), x.u_f.to_array())))
}

fn k_align_generic(x: &Input) -> [f64; 9] {
    let m = align_matrix(&x.u_i.to_array(), &x.u_f.to_array()).expect("stream excludes antipodes");
    let mut out = [0.0; 9];
    for (i, row) in m.rows().into_iter().enumerate() {
        out[3 * i..3 * i + 3].copy_from_slice(&row);
    }
    out
}

fn k_euler_rodrigues_half_angle(x: &Input) -> [f64; 9] {
    let mid = (x.u_i + x.u_f).normalized().expect("stream excludes antipodes");
    flat(euler_rodrigues(tmap(VectorPair::new(x.u_i, mid))).expect("unit pair"))
}

fn k_transvection(x: &Input) -> [f64; 9] {
    let y = transvection_apply_inverse_unchecked(x.u_i, x.u_f, x.e);
    [y.x, y.y, y.z, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
}

fn k_quat_mul(x: &Input) -> [f64; 9] {
    let a = tmap(VectorPair::new(x.u_i, x.u_f));
    let b = tmap(VectorPair::new(x.u_f, x.e));
    let q = quat_mul(a, b);
    [q.s, q.v.x, q.v.y, q.v.z, 0.0, 0.0, 0.0, 0.0, 0.0]
}

fn k_rotation_from_pair(x: &Input) -> [f64; 9] {
    flat(rotation_from_pair(x.u_i, x.u_f).expect("unit pair"))
}

const KERNELS: [(&str, Kernel); 6] = [
    ("align_matrix3_specialized", k_align3),
    ("align_matrix_generic_n3", k_align_generic),
    ("euler_rodrigues_half_angle", k_euler_rodrigues_half_angle),
    ("transvection_apply_inverse", k_transvection),
    ("quat_mul", k_quat_mul),
    ("rotation_from_pair", k_rotation_from_pair),
];

/// Operation counts of one call of the specialized 3D alignment kernel.
pub fn align3_op_counts() -> counting::OpCounts {
    use counting::Counted;
    let u_i = [Counted(0.48), Counted(0.6), Counted(0.64)];
    let u_f = [Counted(0.0), Counted(0.8), Counted(-0.6)];
    counting::count_ops(|| align3_kernel(u_i, u_f)).1
}

fn time_kernel(kernel: Kernel, inputs: &[Input], iterations: usize) -> f64 {
    let mut samples: Vec<f64> = (0..BATCHES)
        .map(|_| {
            let start = Instant::now();
            for i in 0..iterations {
                black_box(kernel(black_box(&inputs[i % inputs.len()])));
            }
            start.elapsed().as_nanos() as f64 / iterations as f64
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[BATCHES / 2]
}

pub fn bench_kernels(seed: u64, iterations: usize) -> Vec<BenchReport> {
    let iterations = iterations.max(1);
    let inputs = input_stream(seed);
    let counts = align3_op_counts();
    KERNELS
        .iter()
        .map(|&(name, kernel)| {
            let mut sum = Fnv::new();
            for x in &inputs {
                kernel(x).into_iter().for_each(|v| sum.push(v));
            }
            let specialized = name == "align_matrix3_specialized";
            BenchReport {
                kernel: name,
                iterations,
                ns_per_op: time_kernel(kernel, &inputs, iterations),
                multiplications: specialized.then_some(counts.multiplications),
                divisions: specialized.then_some(counts.divisions),
                square_roots: specialized.then_some(counts.square_roots),
                checksum: sum.hex(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specialized_kernel_cost() {
        let c = align3_op_counts();
        assert!(c.multiplications <= 18);
        assert_eq!(c.divisions, 1);
        assert_eq!(c.square_roots, 0);
    }

    #[test]
    fn checksums_depend_only_on_seed() {
        let a = bench_kernels(11, 10);
        let b = bench_kernels(11, 300);
        assert_eq!(a.len(), 6);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.kernel, y.kernel);
            assert_eq!(x.checksum, y.checksum);
        }
        let c = bench_kernels(12, 10);
        assert_ne!(a[0].checksum, c[0].checksum);
    }

    #[test]
    fn specialized_and_generic_agree() {
        for x in input_stream(5).iter().take(32) {
            let (a, b) = (k_align3(x), k_align_generic(x));
            for (p, q) in a.iter().zip(&b) {
                assert!((p - q).abs() < 1e-12);
            }
        }
    }
}
