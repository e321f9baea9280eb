//! The invariant suite behind `pairquat check`.
//!
//! Each check draws `iters` seeded samples, reduces them to a single worst
//! value, and compares it against a fixed bound. Same seed, same output.

use std::f64::consts::TAU;

use serde::Serialize;

use pairquat::construction::rotate_in_class;
use pairquat::interpolation::shared_first_pairs;
use pairquat::rotations::line_reflection_matrix;
use pairquat::{
    align_matrix, align_matrix3, belt_point, belt_quaternion, belt_rotation, conjugate_vector, euler_rodrigues,
    identity_residuals, identity_scale, lbc_both_sides, linear_combine, merge, overlap_unit, quat_conjugate,
    quat_mul, rep_with_first, rep_with_second, rotation_from_pair, slerp_s2, slerp_s3, tmap,
    transvection_apply_inverse, Mat3, Quaternion, Vec3, VectorPair,
};

use crate::sampling::Sampler;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Bound {
    /// Worst value must not exceed the bound.
    AtMost(f64),
    /// Worst value must stay strictly above the bound.
    Above(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub worst: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl CheckResult {
    fn new(module: &'static str, name: &'static str, worst: f64, bound: Bound) -> Self {
        let passed = match bound {
            Bound::AtMost(b) => worst <= b,
            Bound::Above(b) => worst > b,
        };
        CheckResult { module, name, worst, bound, passed }
    }

    pub fn line(&self) -> String {
        let (label, cmp, b) = match self.bound {
            Bound::AtMost(b) => ("max", "<=", b),
            Bound::Above(b) => ("min", ">", b),
        };
        format!(
            "{:<4} {:<18} {:<34} {label}={:.3e} {cmp} {:.0e}",
            if self.passed { "ok" } else { "FAIL" },
            self.module,
            self.name,
            self.worst,
            b
        )
    }
}

fn worst_max(iters: usize, rng: &mut Sampler, mut f: impl FnMut(&mut Sampler) -> f64) -> f64 {
    (0..iters).map(|_| f(rng)).fold(0.0, f64::max)
}

fn worst_min(iters: usize, rng: &mut Sampler, mut f: impl FnMut(&mut Sampler) -> f64) -> f64 {
    (0..iters).map(|_| f(rng)).fold(f64::INFINITY, f64::min)
}

fn rel(a: Quaternion, b: Quaternion, scale: f64) -> f64 {
    a.max_abs_diff(b) / scale.max(1.0)
}

fn unit_of(p: VectorPair) -> VectorPair {
    VectorPair::new(p.first / p.first.norm(), p.second / p.second.norm())
}

pub fn run_checks(iters: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    core_algebra(iters, seed, &mut out);
    pair_construction(iters, seed.wrapping_add(1), &mut out);
    rotations(iters, seed.wrapping_add(2), &mut out);
    interpolation(iters, seed.wrapping_add(3), &mut out);
    belt(&mut out);
    out
}

fn core_algebra(iters: usize, seed: u64, out: &mut Vec<CheckResult>) {
    const M: &str = "core_algebra";
    let rng = &mut Sampler::new(seed);

    let w = worst_max(iters, rng, |r| {
        let (v, v2, w) = (r.vec3(), r.vec3(), r.vec3());
        let (a, b) = (r.uniform(-2.0, 2.0), r.uniform(-2.0, 2.0));
        let lhs = tmap(VectorPair::new(a * v + b * v2, w));
        let rhs = tmap(VectorPair::new(v, w)) * a + tmap(VectorPair::new(v2, w)) * b;
        rel(lhs, rhs, 6.0)
    });
    out.push(CheckResult::new(M, "tmap_bilinearity", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (v, w) = (r.vec3(), r.vec3());
        let expected = v.norm() * w.norm();
        (tmap(VectorPair::new(v, w)).norm() - expected).abs() / expected.max(1.0)
    });
    out.push(CheckResult::new(M, "norm_law", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (a, b) = (r.quat(), r.quat());
        let expected = a.norm() * b.norm();
        (quat_mul(a, b).norm() - expected).abs() / expected.max(1.0)
    });
    out.push(CheckResult::new(M, "norm_multiplicativity", w, Bound::AtMost(1e-12)));

    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    let minus_one = Quaternion::new(-1.0, Vec3::ZERO);
    let w = [quat_mul(i, i), quat_mul(j, j), quat_mul(k, k), quat_mul(quat_mul(i, j), k)]
        .iter()
        .map(|q| q.max_abs_diff(minus_one))
        .fold(0.0, f64::max);
    out.push(CheckResult::new(M, "hamilton_relations", w, Bound::AtMost(0.0)));

    let w = quat_mul(i, j).max_abs_diff(quat_mul(j, i));
    out.push(CheckResult::new(M, "non_commutativity_ij", w, Bound::Above(1.0)));

    let w = worst_max(iters, rng, |r| {
        let (a, b, c) = (r.quat(), r.quat(), r.quat());
        rel(quat_mul(quat_mul(a, b), c), quat_mul(a, quat_mul(b, c)), a.norm() * b.norm() * c.norm())
    });
    out.push(CheckResult::new(M, "associativity", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let planar = |len: f64, ang: f64| Vec3::new(len * ang.cos(), len * ang.sin(), 0.0);
        let (t1, t2, ph) = (r.uniform(-3.0, 3.0), r.uniform(-3.0, 3.0), r.uniform(-3.0, 3.0));
        let (r1, r2) = (r.uniform(0.1, 2.0), r.uniform(0.1, 2.0));
        let p = VectorPair::new(planar(1.0, ph), planar(r1, ph + t1));
        let p2 = VectorPair::new(planar(1.0, -ph), planar(r2, -ph + t2));
        let q = quat_mul(tmap(p2), tmap(p));
        let rr = r1 * r2;
        let expected = Quaternion::new(rr * (t1 + t2).cos(), Vec3::new(0.0, 0.0, rr * (t1 + t2).sin()));
        rel(q, expected, rr)
    });
    out.push(CheckResult::new(M, "coplanar_angle_addition", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (a, b, c) = (r.vec3(), r.vec3(), r.vec3());
        let scale = identity_scale(a, b, c);
        [(a, b, c), (b, c, a), (c, a, b)]
            .into_iter()
            .map(|(x, y, z)| {
                let (s, v) = identity_residuals(x, y, z);
                s.abs().max(v.max_abs()) / scale
            })
            .fold(0.0, f64::max)
    });
    out.push(CheckResult::new(M, "triple_identities_cyclic", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (a, b, c, d) = (r.vec3(), r.vec3(), r.vec3(), r.vec3());
        let (l, rr) = lbc_both_sides(a, b, c, d);
        (l - rr).abs() / (a.norm() * b.norm() * c.norm() * d.norm()).max(1.0)
    });
    out.push(CheckResult::new(M, "lagrange_identity", w, Bound::AtMost(1e-12)));
}

fn pair_construction(iters: usize, seed: u64, out: &mut Vec<CheckResult>) {
    const M: &str = "pair_construction";
    let rng = &mut Sampler::new(seed);

    let w = worst_max(iters, rng, |r| {
        let q = r.quat();
        let base = overlap_unit(q, q).map(|o| o.u).unwrap_or(Vec3::E1);
        let angle = r.uniform(-3.0, 3.0);
        let u = match q.v.normalized() {
            Some(n) => angle.cos() * base + angle.sin() * n.cross(base),
            None => base,
        };
        let f = rep_with_first(q, u).map(tmap);
        let s = rep_with_second(q, u).map(tmap);
        match (f, s) {
            (Ok(f), Ok(s)) => rel(f, q, q.norm()).max(rel(s, q, q.norm())),
            _ => f64::INFINITY,
        }
    });
    out.push(CheckResult::new(M, "representative_round_trip", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (l, rt) = (r.nonzero_pair(), r.nonzero_pair());
        let expected = quat_mul(tmap(l), tmap(rt));
        merge(l, rt).map_or(f64::INFINITY, |m| rel(tmap(m), expected, expected.norm()))
    });
    out.push(CheckResult::new(M, "merge_homomorphism", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (l, rt) = (r.nonzero_pair(), r.nonzero_pair());
        let k = r.uniform(0.3, 3.0);
        let l2 = rotate_in_class(VectorPair::new(l.first * k, l.second / k), r.uniform(-3.0, 3.0));
        let r2 = rotate_in_class(rt, r.uniform(-3.0, 3.0));
        match (merge(l, rt), merge(l2, r2)) {
            (Ok(a), Ok(b)) => tmap(a).max_abs_diff(tmap(b)),
            _ => f64::INFINITY,
        }
    });
    out.push(CheckResult::new(M, "merge_well_defined", w, Bound::AtMost(1e-10)));

    let w = worst_max(iters, rng, |r| {
        let p = r.unit_pair();
        merge(p, p.swapped()).map_or(f64::INFINITY, |m| tmap(m).max_abs_diff(Quaternion::ONE))
    });
    out.push(CheckResult::new(M, "merge_inverse", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (a, b) = (r.quat(), r.quat());
        let (ca, cb) = (r.uniform(-2.0, 2.0), r.uniform(-2.0, 2.0));
        linear_combine(a, b, ca, cb).map_or(f64::INFINITY, |q| rel(q, a * ca + b * cb, 4.0))
    });
    out.push(CheckResult::new(M, "linear_combine", w, Bound::AtMost(1e-12)));
}

fn rotations(iters: usize, seed: u64, out: &mut Vec<CheckResult>) {
    const M: &str = "rotations";
    let rng = &mut Sampler::new(seed);

    let w = worst_max(iters, rng, |r| {
        let p = r.unit_pair();
        let q = tmap(p);
        let c = rotation_from_pair(p.first, p.second).unwrap();
        let c_neg = rotation_from_pair(-p.first, p.second).unwrap();
        let er = euler_rodrigues(q).unwrap();
        let er_neg = euler_rodrigues(-q).unwrap();
        c.max_abs_diff(&c_neg).max(er.max_abs_diff(&er_neg)).max(er.max_abs_diff(&c))
    });
    out.push(CheckResult::new(M, "double_cover", w, Bound::AtMost(1e-10)));

    let w = worst_max(iters, rng, |r| {
        let u = r.unit3();
        let a = rotation_from_pair(u, u).unwrap().max_abs_diff(&Mat3::IDENTITY);
        let b = rotation_from_pair(u, -u).unwrap().max_abs_diff(&Mat3::IDENTITY);
        a.max(b)
    });
    out.push(CheckResult::new(M, "kernel_contains_trivial_classes", w, Bound::AtMost(1e-14)));

    let w = worst_min(iters, rng, |r| loop {
        let (u, v) = (r.unit3(), r.unit3());
        if u.dot(v).abs() < 1.0 - 1e-6 {
            break (rotation_from_pair(u, v).unwrap().apply(u) - u).norm();
        }
    });
    out.push(CheckResult::new(M, "kernel_only_trivial_classes", w, Bound::Above(1e-6)));

    let w = worst_max(iters, rng, |r| {
        let p = r.unit_pair();
        let c = rotation_from_pair(p.first, p.second).unwrap();
        let d = p.first.dot(p.second).abs().min(1.0);
        (c.rotation_angle() - 2.0 * d.acos()).abs()
    });
    out.push(CheckResult::new(M, "angle_doubling", w, Bound::AtMost(1e-9)));

    let w = worst_max(iters, rng, |r| {
        let (l, rt) = (unit_of(r.nonzero_pair()), unit_of(r.nonzero_pair()));
        let m = merge(l, rt).unwrap();
        let composed = rotation_from_pair(l.first, l.second).unwrap() * rotation_from_pair(rt.first, rt.second).unwrap();
        rotation_from_pair(m.first, m.second).unwrap().max_abs_diff(&composed)
    });
    out.push(CheckResult::new(M, "rotation_homomorphism", w, Bound::AtMost(1e-10)));

    let w = worst_max(iters, rng, |r| {
        let rot = euler_rodrigues(r.unit_quat()).unwrap();
        let u = r.unit3();
        let ru = rot.apply(u);
        let lhs = line_reflection_matrix(ru / ru.norm()).unwrap();
        let rhs = rot * line_reflection_matrix(u).unwrap() * rot.transpose();
        lhs.max_abs_diff(&rhs)
    });
    out.push(CheckResult::new(M, "reflection_equivariance", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (u_i, u_f) = (r.unit3(), r.unit3());
        if (u_i + u_f).norm() < 1e-3 {
            return 0.0;
        }
        let m = align_matrix3(u_i, u_f).unwrap();
        let half = tmap(VectorPair::new(u_i, (u_i + u_f) / (u_i + u_f).norm()));
        m.max_abs_diff(&euler_rodrigues(half).unwrap())
    });
    out.push(CheckResult::new(M, "align_matches_half_angle_pair", w, Bound::AtMost(1e-10)));

    for n in [2usize, 3, 5, 10] {
        let w = worst_max(iters, rng, |r| align_residual(r, n));
        let name: &'static str = match n {
            2 => "align_matrix_n2",
            3 => "align_matrix_n3",
            5 => "align_matrix_n5",
            _ => "align_matrix_n10",
        };
        out.push(CheckResult::new(M, name, w, Bound::AtMost(1e-12)));
    }

    let w = worst_max(iters, rng, |r| {
        let (u_i, u_f, e) = (r.unit3(), r.unit3(), r.vec3());
        if (u_i + u_f).norm() < 1e-3 {
            return 0.0;
        }
        let m = align_matrix3(u_i, u_f).unwrap();
        (transvection_apply_inverse(u_i, u_f, e).unwrap() - m.transpose().apply(e)).max_abs()
    });
    out.push(CheckResult::new(M, "transvection_inverse", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (q, x) = (r.unit_quat(), r.vec3());
        let c = r.uniform(-1.0, 1.0);
        let full = quat_mul(quat_mul(q, Quaternion::new(c, x)), quat_conjugate(q));
        let y = conjugate_vector(q, x).unwrap();
        let m = euler_rodrigues(q).unwrap().apply(x);
        (full.s - c).abs().max((y.norm() - x.norm()).abs()).max((y - m).max_abs())
    });
    out.push(CheckResult::new(M, "conjugation", w, Bound::AtMost(1e-12)));
}

/// Worst violation of `R uI = uF`, orthogonality, `det R = 1`, and fixing a
/// vector orthogonal to `span{uI, uF}`.
pub fn align_residual(r: &mut Sampler, n: usize) -> f64 {
    let (u_i, u_f) = loop {
        let (a, b) = (r.unit_n(n), r.unit_n(n));
        let ss: f64 = a.iter().zip(&b).map(|(x, y)| (x + y) * (x + y)).sum();
        if ss > 1e-3 {
            break (a, b);
        }
    };
    let m = align_matrix(&u_i, &u_f).unwrap();
    let mapped = m.apply(&u_i);
    let hit = mapped.iter().zip(&u_f).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let orth = m.orthogonality_error();
    let det = (m.determinant() - 1.0).abs();
    let fixed = orthogonal_complement_sample(r, &u_i, &u_f)
        .map(|x| m.apply(&x).iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .unwrap_or(0.0);
    hit.max(orth).max(det).max(fixed)
}

/// Random vector orthogonal to `a` and `b` (Gram-Schmidt), `None` when the
/// complement is trivial.
pub fn orthogonal_complement_sample(r: &mut Sampler, a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    let e1 = a.to_vec();
    let mut e2: Vec<f64> = b.iter().zip(&e1).map(|(y, x)| y - dot(b, &e1) * x).collect();
    let n2 = dot(&e2, &e2).sqrt();
    let basis: Vec<Vec<f64>> = if n2 > 1e-8 {
        e2.iter_mut().for_each(|x| *x /= n2);
        vec![e1, e2]
    } else {
        vec![e1]
    };
    if basis.len() >= n {
        return None;
    }
    let mut x: Vec<f64> = (0..n).map(|_| r.uniform(-1.0, 1.0)).collect();
    // two passes for stability
    for _ in 0..2 {
        for e in &basis {
            let d = dot(&x, e);
            x.iter_mut().zip(e).for_each(|(xi, ei)| *xi -= d * ei);
        }
    }
    Some(x)
}

fn interpolation(iters: usize, seed: u64, out: &mut Vec<CheckResult>) {
    const M: &str = "interpolation";
    let rng = &mut Sampler::new(seed);
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];

    let draw = |r: &mut Sampler| loop {
        let (a, b) = (r.unit_quat(), r.unit_quat());
        let omega = a.dot(b).clamp(-1.0, 1.0).acos();
        if omega > 0.1 && omega < 3.0 {
            break (a, b, omega);
        }
    };

    let w = worst_max(iters, rng, |r| {
        let (a, b, _) = draw(r);
        grid.iter()
            .map(|&t| slerp_s2(a, b, t).unwrap().max_abs_diff(slerp_s3(a, b, t).unwrap()))
            .fold(0.0, f64::max)
    });
    out.push(CheckResult::new(M, "slerp_s2_matches_s3", w, Bound::AtMost(1e-10)));

    let w = worst_max(iters, rng, |r| {
        let (a, b, _) = draw(r);
        let (p, p2) = shared_first_pairs(a, b).unwrap();
        let (l, rt) = lbc_both_sides(p.first, p.second, p2.first, p2.second);
        (p.second.dot(p2.second) - a.dot(b)).abs().max((l - rt).abs())
    });
    out.push(CheckResult::new(M, "dot_product_transfer", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (a, b, _) = draw(r);
        let t = r.uniform(0.0, 1.0);
        slerp_s3(a, b, t).unwrap().max_abs_diff(slerp_s3(b, a, 1.0 - t).unwrap())
    });
    out.push(CheckResult::new(M, "reversal_symmetry", w, Bound::AtMost(1e-12)));

    let w = worst_max(iters, rng, |r| {
        let (a, b, omega) = draw(r);
        let t = r.uniform(0.0, 1.0);
        let q = slerp_s3(a, b, t).unwrap();
        let travelled = 2.0 * (q - a).norm().atan2((q + a).norm());
        (travelled - t * omega).abs().max((q.norm() - 1.0).abs())
    });
    out.push(CheckResult::new(M, "constant_speed_unit_path", w, Bound::AtMost(1e-9)));
}

fn belt(out: &mut Vec<CheckResult>) {
    const M: &str = "belt_homotopy";
    const N: usize = 180;
    let step = TAU / N as f64;
    let mut unit = 0.0_f64;
    let mut coherence = 0.0_f64;
    let mut closure = 0.0_f64;
    let mut lipschitz = 0.0_f64;
    for it in 0..=N {
        let t = it as f64 * step;
        closure = closure
            .max((belt_point(0.0, t) - belt_point(TAU, t)).max_abs())
            .max(belt_quaternion(0.0, t).max_abs_diff(belt_quaternion(TAU, t)));
        for is in 0..=N {
            let s = is as f64 * step;
            let e = belt_point(s, t);
            let q = belt_quaternion(s, t);
            unit = unit.max((e.norm() - 1.0).abs()).max((q.norm() - 1.0).abs());
            coherence = coherence.max(belt_rotation(s, t).max_abs_diff(&euler_rodrigues(q).unwrap()));
            if is > 0 {
                let d = (e - belt_point(s - step, t)).norm().max((q - belt_quaternion(s - step, t)).norm());
                lipschitz = lipschitz.max(d / step);
            }
            if it > 0 {
                let d = (e - belt_point(s, t - step)).norm().max((q - belt_quaternion(s, t - step)).norm());
                lipschitz = lipschitz.max(d / step);
            }
        }
    }
    out.push(CheckResult::new(M, "unit_point_and_quaternion", unit, Bound::AtMost(1e-14)));
    out.push(CheckResult::new(M, "rotation_matches_quaternion", coherence, Bound::AtMost(1e-10)));
    out.push(CheckResult::new(M, "loop_closure", closure, Bound::AtMost(1e-12)));
    out.push(CheckResult::new(M, "adjacent_step_ratio", lipschitz, Bound::AtMost(10.0)));

    let mut ends = 0.0_f64;
    let mut double_turn = 0.0_f64;
    for is in 0..=N {
        let s = is as f64 * step;
        ends = ends
            .max((belt_point(s, TAU) - Vec3::E1).max_abs())
            .max(belt_rotation(s, TAU).max_abs_diff(&Mat3::IDENTITY));
        let r0 = belt_rotation(s, 0.0);
        let axis_err = (r0.apply(Vec3::E3) - Vec3::E3).max_abs();
        double_turn = double_turn.max(axis_err).max((r0.trace() - (1.0 + 2.0 * (2.0 * s).cos())).abs());
    }
    out.push(CheckResult::new(M, "collapsed_end", ends, Bound::AtMost(1e-12)));
    out.push(CheckResult::new(M, "double_turn_start", double_turn, Bound::AtMost(1e-10)));
}
