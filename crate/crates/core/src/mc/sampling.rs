//! Random draws used by the simulator and the counter-based stream layout
//! that makes every trial reproducible on its own.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson};

/// Homogeneous Poisson points on `[lo, hi)`, in draw order.
pub fn sample_ppp<R: Rng + ?Sized>(intensity: f64, lo: f64, hi: f64, rng: &mut R) -> Vec<f64> {
    debug_assert!(hi > lo);
    let mean = intensity * (hi - lo);
    if !(mean > 0.0) {
        return Vec::new();
    }
    let count = Poisson::new(mean).expect("finite positive mean").sample(rng) as usize;
    (0..count).map(|_| rng.random_range(lo..hi)).collect()
}

/// Power `|h|²` of a Nakagami-m amplitude: Gamma with shape `m` and mean `mu`.
pub fn sample_nakagami_power<R: Rng + ?Sized>(m: u32, mu: f64, rng: &mut R) -> f64 {
    let shape = m as f64;
    Gamma::new(shape, mu / shape)
        .expect("shape and scale are positive")
        .sample(rng)
}

/// Generator for one `(seed, trial, stream)` triple.
///
/// The ChaCha key packs seed and trial index verbatim, so distinct pairs
/// never share a key; `stream` selects an independent sequence under it.
pub fn substream(seed: u64, trial: u64, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream);
    rng
}
