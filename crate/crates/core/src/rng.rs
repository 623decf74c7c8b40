//! Splittable, counter-style seeding.
//!
//! Every random object in an experiment is addressed by a path of integer
//! labels below the master seed (run, shot, brick, ...). The generator for
//! a path depends on nothing else, so results are identical no matter how
//! work is split across threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedTree(u64);

// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl SeedTree {
    pub fn new(master: u64) -> Self {
        SeedTree(master)
    }

    pub fn seed(self) -> u64 {
        self.0
    }

    /// Child node for `label`.
    pub fn derive(self, label: u64) -> Self {
        SeedTree(mix(mix(self.0) ^ label.wrapping_mul(0xd6e8_feb8_6659_fd93)))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}
