//! Shared inputs for the benchmarks.

use cosetdyn::sample::{fixture_groups, random_group_shift};
use cosetdyn::GroupShiftModel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One seeded random group shift per fixture group of order at most `max_order`.
pub fn corpus(max_order: usize) -> Vec<(String, GroupShiftModel)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    fixture_groups()
        .into_iter()
        .filter(|(_, g)| g.order() <= max_order)
        .map(|(name, g)| {
            let m = random_group_shift(&g, &mut rng);
            (name, m)
        })
        .collect()
}
