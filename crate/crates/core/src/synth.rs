//! Planted ground truth and the flip-noise similarity oracle.
//!
//! All randomness comes from [`ChaCha8Rng`] seeded with `seed_from_u64`, so
//! outputs are reproducible across platforms and runs. The similarity oracle
//! consumes its stream in a fixed order: pairs `i < j` row-major, and for
//! each pair the flip coin before the magnitude.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dendrogram::Partition;
use crate::error::{Error, Result};
use crate::matrix::{MatrixKind, SignedMatrix};
use crate::scalar::Scalar;

/// Flip probability and seed for [`noisy_similarities`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    eta: f64,
    pub seed: u64,
}

impl NoiseConfig {
    pub fn new(eta: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidEta(eta));
        }
        Ok(NoiseConfig { eta, seed })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// Uniform labels over `k` clusters, redrawn until no cluster is empty.
///
/// With `k == n` every surjection is a permutation, so a shuffle is drawn directly.
pub fn planted_labels(n: usize, k: usize, seed: u64) -> Result<Partition> {
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if k == n {
        let mut labels: Vec<usize> = (0..n).collect();
        labels.shuffle(&mut rng);
        return Ok(Partition::new(labels));
    }
    loop {
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        let mut seen = vec![false; k];
        for &l in &labels {
            seen[l] = true;
        }
        if seen.iter().all(|&s| s) {
            return Ok(Partition::new(labels));
        }
    }
}

/// Draws from the open interval (0, 1) as a `T`.
fn open_unit<T: Scalar>(rng: &mut ChaCha8Rng) -> T {
    loop {
        let x = T::lit(rng.gen::<f64>());
        if x > T::zero() && x < T::one() {
            return x;
        }
    }
}

/// Similarity oracle with flip noise.
///
/// A same-cluster pair gets `U(0, 1)` with probability `1 - eta` and
/// `U(-1, 0)` otherwise; a cross-cluster pair the reverse. Each unordered
/// pair is drawn once and mirrored.
pub fn noisy_similarities<T: Scalar>(labels: &Partition, cfg: &NoiseConfig) -> SignedMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let l = labels.labels();
    SignedMatrix::from_upper(l.len(), MatrixKind::Similarity, |i, j| {
        let flip = rng.gen::<f64>() < cfg.eta;
        let magnitude: T = open_unit(&mut rng);
        let positive = (l[i] == l[j]) != flip;
        if positive {
            magnitude
        } else {
            -magnitude
        }
    })
}
