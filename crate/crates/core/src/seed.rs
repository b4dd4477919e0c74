//! Deterministic sub-stream seed derivation.
//!
//! All randomness in a run flows from one root seed. Named sub-streams keep
//! modules independent of each other: adding a draw in one place never shifts
//! the stream seen by another.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Derive a child seed from `(root, label, index)`.
pub fn derive_seed(root: u64, label: &str, index: u64) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(root.to_le_bytes());
    hasher.update([0xff]);
    hasher.update(label.as_bytes());
    hasher.update([0xfe]);
    hasher.update(index.to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

/// RNG for a named sub-stream.
pub fn sub_rng(root: u64, label: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(root, label, index))
}
