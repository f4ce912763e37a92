//! Deterministic random streams. Every sampling task derives its own
//! ChaCha substream from a base seed, so parallel or reordered
//! evaluation cannot change results.

use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::vec::Vector;
#[allow(unused_imports)] // unused only when a std build shadows these
use crate::float::FloatExt;

/// RNG for a `(seed, stream)` pair.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard normal via Box-Muller.
pub fn normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
}

/// Vector of iid standard normals.
pub fn normal_vector(rng: &mut impl Rng, n: usize) -> Vector {
    (0..n).map(|_| normal(rng)).collect()
}

/// Uniform point on the unit sphere of `R^n`.
pub fn unit_vector(rng: &mut impl Rng, n: usize) -> Vector {
    loop {
        let v = normal_vector(rng, n);
        if let Some(u) = crate::vec::normalized(&v) {
            return u;
        }
    }
}

/// Dirichlet(1,...,1) weights: uniform on the simplex.
pub fn dirichlet(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..k)
        .map(|_| -rng.random::<f64>().max(1e-300).ln())
        .collect();
    let s: f64 = w.iter().sum();
    for x in w.iter_mut() {
        *x /= s;
    }
    w
}
