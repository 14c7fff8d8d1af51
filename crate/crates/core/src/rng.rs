//! Seeded Gaussian noise.
//!
//! The generator is xoshiro256++ whose 256-bit state is expanded from the
//! 64-bit seed with SplitMix64 (`rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64`).
//! Uniforms take the top 53 bits of each output, and normals come from the
//! basic Box–Muller transform, consuming two uniforms per pair of normals:
//!
//! ```text
//! u1 = 1 - (next >> 11) * 2^-53      in (0, 1]
//! u2 =     (next >> 11) * 2^-53      in [0, 1)
//! z0 = sqrt(-2 ln u1) cos(2π u2)     returned first
//! z1 = sqrt(-2 ln u1) sin(2π u2)     cached, returned by the next call
//! ```
//!
//! The stream depends only on the seed, so runs reproduce bit for bit.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

#[derive(Debug, Clone)]
pub struct GaussianSource {
    rng: Xoshiro256PlusPlus,
    spare: Option<f64>,
}

impl GaussianSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// One standard normal draw.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let (sin, cos) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare = Some(radius * sin);
        radius * cos
    }

    /// `n` independent draws from `N(0, sigma^2)`.
    pub fn gaussian_vector(&mut self, n: usize, sigma: f64) -> Vec<f64> {
        (0..n).map(|_| sigma * self.standard_normal()).collect()
    }
}
