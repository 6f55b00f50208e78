//! Workloads shared by the criterion benches.

use nearval::fuzz::{generate, Distribution};
use nearval::ValueArray;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible array of length `n`.
pub fn workload(dist: Distribution, n: usize, alphabet: usize) -> ValueArray {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    generate(&mut rng, dist, n, alphabet)
}
