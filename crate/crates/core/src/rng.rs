//! Seeded randomness.
//!
//! Every stochastic step draws from [`ChaCha8Rng`], which produces the same
//! stream on every platform for a given seed. Gaussian variates come from the
//! Box–Muller transform applied to that stream, so no platform- or
//! version-dependent normal sampler is involved.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type BubblerRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> BubblerRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One standard-normal draw via Box–Muller (the sine branch is discarded so
/// each call consumes exactly two uniforms).
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // u1 in (0, 1] keeps ln finite.
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn normal<R: Rng + ?Sized>(rng: &mut R, mean: f64, std: f64) -> f64 {
    mean + std * standard_normal(rng)
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for image `image_index` at sigma position `sigma_index` of a sweep.
///
/// `mix64(mix64(mix64(master) ^ sigma_index) ^ image_index)`; any sub-batch can
/// be regenerated without replaying the rest of the sweep.
pub fn child_seed(master: u64, sigma_index: u64, image_index: u64) -> u64 {
    mix64(mix64(mix64(master) ^ sigma_index) ^ image_index)
}

/// Derive an independent stream seed from `seed` for a named purpose.
pub fn substream(seed: u64, salt: u64) -> u64 {
    mix64(seed ^ mix64(salt))
}
