//! Seeded random inputs for `check` and `bench`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pairquat::{tmap, Quaternion, Vec3, VectorPair};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Components uniform in `[-1, 1)`.
    pub fn vec3(&mut self) -> Vec3 {
        Vec3::new(self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0))
    }

    /// Uniform on the sphere (rejection from the cube).
    pub fn unit3(&mut self) -> Vec3 {
        loop {
            let v = self.vec3();
            let n2 = v.norm_squared();
            if n2 > 1e-4 && n2 <= 1.0 {
                return v / n2.sqrt();
            }
        }
    }

    pub fn unit_n(&mut self, n: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| self.uniform(-1.0, 1.0)).collect();
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 > 1e-4 {
                let len = n2.sqrt();
                return v.into_iter().map(|x| x / len).collect();
            }
        }
    }

    pub fn quat(&mut self) -> Quaternion {
        Quaternion::new(self.uniform(-1.0, 1.0), self.vec3())
    }

    pub fn unit_quat(&mut self) -> Quaternion {
        loop {
            let q = self.quat();
            let n2 = q.norm_squared();
            if n2 > 1e-4 && n2 <= 1.0 {
                return q * (1.0 / n2.sqrt());
            }
        }
    }

    /// Pair with `|T(v, w)|` bounded away from zero.
    pub fn nonzero_pair(&mut self) -> VectorPair {
        loop {
            let p = VectorPair::new(self.vec3(), self.vec3());
            if tmap(p).norm() > 1e-3 {
                return p;
            }
        }
    }

    pub fn unit_pair(&mut self) -> VectorPair {
        VectorPair::new(self.unit3(), self.unit3())
    }
}
