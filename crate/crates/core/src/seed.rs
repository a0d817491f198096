//! Deterministic seed expansion.
//!
//! Replicate `r` of a sweep uses `splitmix64(master + r)`. The seed depends
//! only on the master seed and the replicate index, so any sweep point can be
//! recomputed on its own.

/// One round of the SplitMix64 output function applied to `x + γ`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn replicate_seeds(master: u64, replicates: usize) -> Vec<u64> {
    (0..replicates as u64).map(|r| splitmix64(master.wrapping_add(r))).collect()
}
