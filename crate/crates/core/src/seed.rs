//! Seed splitting.
//!
//! Every random choice in the crate descends from one 64-bit seed. Streams
//! are derived with a counter-based mix (splitmix64 over a label hash and an
//! index) so that independent consumers never share a generator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn label_hash(label: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Derives the seed of stream `label`, counter `index`, from `master`.
pub fn derive(master: u64, label: &str, index: u64) -> u64 {
    splitmix64(splitmix64(master ^ label_hash(label)).wrapping_add(splitmix64(index)))
}

/// A ChaCha generator for stream `label`, counter `index`.
pub fn rng(master: u64, label: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(master, label, index))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_differ() {
        assert_ne!(derive(7, "round", 0), derive(7, "round", 1));
        assert_ne!(derive(7, "round", 0), derive(7, "schedule", 0));
        assert_ne!(derive(7, "round", 0), derive(8, "round", 0));
        assert_eq!(derive(7, "round", 3), derive(7, "round", 3));
    }
}
