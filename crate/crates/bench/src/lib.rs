//! Fixtures shared by the benchmarks.

use porism_core::sample::{random_scene, Placement};
use porism_core::PorismScene;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `n` reproducible random scenes with the given pedal-point placement.
pub fn fixture_scenes(seed: u64, n: usize, placement: Placement) -> Vec<PorismScene> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_scene(&mut rng, placement)).collect()
}
