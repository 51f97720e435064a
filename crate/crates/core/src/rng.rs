//! Seeded random streams.
//!
//! Every stream is ChaCha8 keyed by the 64-bit seed, with the ChaCha stream
//! id selecting an independent sequence. Parallel workers use their batch
//! index as the stream id, so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::C64;

pub type StreamRng = ChaCha8Rng;

pub fn stream(seed: u64, id: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Two independent standard normals by the Marsaglia polar method.
pub fn normal_pair<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    loop {
        let u = 2.0 * rng.random::<f64>() - 1.0;
        let v = 2.0 * rng.random::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            let f = (-2.0 * s.ln() / s).sqrt();
            return (u * f, v * f);
        }
    }
}

/// Complex Gaussian with independent standard normal parts.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let (re, im) = normal_pair(rng);
    C64::new(re, im)
}

/// Exponential(1) variate.
pub fn exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // 1 − U lies in (0, 1], so the logarithm is finite.
    -(1.0 - rng.random::<f64>()).ln()
}
