//! Seeded random streams and the distribution draws used by sampling.
//!
//! Laplace and normal variates are derived from uniform draws by inverse CDF
//! and Box-Muller respectively, so a given uniform stream always yields the
//! same variates regardless of platform or library version. That, plus one
//! independent ChaCha8 stream per sample index, is what makes dataset bytes a
//! pure function of (map, config, master_seed).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fixed domain-separation tag in the per-sample seed block.
const STREAM_TAG: &[u8; 16] = b"traj-sample-rng\0";

/// Independent random stream for sample `index` under `master_seed`.
///
/// The 256-bit ChaCha8 seed is the concatenation of the master seed, the
/// sample index (both little-endian) and a constant tag, so distinct indices
/// give unrelated streams and the mapping never changes between releases.
pub fn sample_stream(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[0..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&index.to_le_bytes());
    seed[16..32].copy_from_slice(STREAM_TAG);
    ChaCha8Rng::from_seed(seed)
}

/// Uniform draw in `[lo, hi)`.
pub fn uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    debug_assert!(hi >= lo);
    lo + (hi - lo) * rng.gen::<f64>()
}

/// Laplace(0, scale) via inverse CDF.
pub fn laplace<R: Rng>(rng: &mut R, scale: f64) -> f64 {
    debug_assert!(scale >= 0.0);
    // gen::<f64>() covers [0, 1); redraw the measure-zero 0.0 so the
    // centered variable stays in (-0.5, 0.5) and the log stays finite.
    let mut u = rng.gen::<f64>();
    while u == 0.0 {
        u = rng.gen::<f64>();
    }
    let p = u - 0.5;
    -scale * p.signum() * (1.0 - 2.0 * p.abs()).ln()
}

/// Standard normal via Box-Muller (one variate per call, two uniforms).
pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // 1 - [0,1) = (0,1] keeps the log finite.
    let u1 = 1.0 - rng.gen::<f64>();
    let u2 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Normal(0, std²).
pub fn normal<R: Rng>(rng: &mut R, std: f64) -> f64 {
    debug_assert!(std >= 0.0);
    std * standard_normal(rng)
}
