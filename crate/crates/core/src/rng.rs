//! Counter-based random streams.
//!
//! Every random quantity in the crate is drawn from a ChaCha stream keyed by
//! `(master_seed, domain)` and positioned by a stream index (usually the
//! replicate index). Replicates can therefore run in any order or on any
//! number of threads and still see the same numbers.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Domain tags keep unrelated draws (edge coins, vaccine acceptance, graph
/// generation) on disjoint keys even when they share a master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Domain {
    LiveEdges,
    Acceptance(u64),
    Thinning,
    DirectSir,
    Iteration,
}

impl Domain {
    fn tag(self) -> (u64, u64) {
        match self {
            Domain::LiveEdges => (1, 0),
            Domain::Acceptance(group) => (2, group),
            Domain::Thinning => (3, 0),
            Domain::DirectSir => (4, 0),
            Domain::Iteration => (5, 0),
        }
    }
}

pub(crate) fn stream(master_seed: u64, domain: Domain, index: u64) -> ChaCha8Rng {
    let (kind, sub) = domain.tag();
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8..16].copy_from_slice(&kind.to_le_bytes());
    key[16..24].copy_from_slice(&sub.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Seed for greedy iteration `iteration`, derived from the run's master seed.
pub(crate) fn derive_seed(master_seed: u64, iteration: u64) -> u64 {
    use rand::RngCore;
    stream(master_seed, Domain::Iteration, iteration).next_u64()
}

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
