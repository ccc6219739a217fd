//! Seeded random streams. Every consumer derives its own substream from a
//! master seed and a fixed label so results do not depend on call order.

use alloc::vec::Vec;
use core::f64::consts::PI;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::linalg::C64;

pub type Stream = ChaCha20Rng;

/// Substream for `label` under `seed` (FNV-1a of the label mixed into the seed).
pub fn substream(seed: u64, label: &str) -> Stream {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha20Rng::seed_from_u64(seed ^ h.rotate_left(17))
}

/// First word of the substream, used to report the effective per-label seed.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    substream(seed, label).gen()
}

pub fn uniform(rng: &mut Stream, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

/// Standard normal deviate (Box-Muller).
pub fn normal(rng: &mut Stream) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen::<f64>();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * PI * u2)
}

/// Complex vector with independent standard normal real and imaginary parts.
pub fn complex_vector(rng: &mut Stream, n: usize) -> Vec<C64> {
    (0..n).map(|_| C64::new(normal(rng), normal(rng))).collect()
}

pub fn complex_scalar(rng: &mut Stream) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// Uniform point on the unit sphere S^{n-1} in R^n.
pub fn unit_sphere<const N: usize>(rng: &mut Stream) -> [f64; N] {
    loop {
        let mut v = [0.0; N];
        for x in v.iter_mut() {
            *x = normal(rng);
        }
        let r = libm::sqrt(v.iter().map(|x| x * x).sum());
        if r > 1e-12 {
            for x in v.iter_mut() {
                *x /= r;
            }
            return v;
        }
    }
}
