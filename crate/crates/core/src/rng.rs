//! Labeled, independent random streams derived from one user seed.
//!
//! Every randomized operation draws from its own stream, keyed by a string
//! label, so enabling or disabling one consumer never shifts the draws seen
//! by another. Streams are ChaCha20 generators seeded by SHA-256 of the user
//! seed and the label, which keeps results identical across platforms.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

/// Deterministic generator for one labeled stream.
pub fn stream(seed: u64, label: &str) -> ChaCha20Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(b"/");
    hasher.update(label.as_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha20Rng::from_seed(key)
}

/// One draw from Laplace(0, scale) via inverse CDF.
///
/// A scale of 0 returns 0, which noiseless overrides rely on.
pub fn sample_laplace<R: Rng>(rng: &mut R, scale: f64) -> f64 {
    if scale == 0.0 {
        return 0.0;
    }
    let u: f64 = rng.gen_range(-0.5..0.5);
    -scale * u.signum() * (1.0 - 2.0 * u.abs()).ln()
}

/// One draw from Normal(0, sigma). Sigma is the standard deviation.
pub fn sample_gaussian<R: Rng>(rng: &mut R, sigma: f64) -> f64 {
    if sigma == 0.0 {
        return 0.0;
    }
    let normal = rand_distr::Normal::new(0.0, sigma).expect("sigma must be finite and >= 0");
    rng.sample(normal)
}
