//! Deterministic pseudo-randomness with a pinned, documented algorithm.
//!
//! Reproducibility across runs, platforms, and thread counts is a hard
//! requirement for the randomized estimators, so the generator is pinned to
//! plain SplitMix64 and exposed in *counter mode*: the value at position `i`
//! of the stream for `seed` is a pure function of `(seed, i)`. Parallel
//! consumers index positions instead of sharing mutable state, which makes
//! every sampled quantity independent of scheduling.
//!
//! Pinned contract (identifier [`PRNG_ALGORITHM`]):
//!
//! ```text
//! value(seed, i) = mix(seed + (i + 1) * 0x9E3779B97F4A7C15)   (mod 2^64)
//! mix(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//!         z ^= z >> 27; z *= 0x94D049BB133111EB;
//!         z ^= z >> 31; return z
//! ```
//!
//! which is exactly the (i+1)-st output of the reference SplitMix64 stream
//! seeded with `seed`.

/// Identifier of the pinned generator, recorded in run manifests so that a
/// future change of algorithm is visible as a change of identifier.
pub const PRNG_ALGORITHM: &str = "splitmix64-v1";

/// Fixed default seed shared by every seeded interface (CLI and batch
/// verification): runs are reproducible out of the box, and varying the
/// stream is an explicit opt-in.
pub const DEFAULT_SEED: u64 = 0x00C0_FFEE;

const GOLDEN: u64 = 0x9E3779B97F4A7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// The `i`-th value (0-based) of the SplitMix64 stream for `seed`.
#[inline]
pub fn value_at(seed: u64, i: u64) -> u64 {
    mix(seed.wrapping_add(i.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Derives an independent child seed, e.g. one per Monte Carlo trial.
/// Defined as `value_at(seed, index)`, so it inherits the pinned contract.
#[inline]
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    value_at(seed, index)
}

/// Sequential SplitMix64 generator over the same stream as [`value_at`].
///
/// `SplitMix64::new(seed).next_u64()` equals `value_at(seed, 0)`, the second
/// call equals `value_at(seed, 1)`, and so on.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform value in `[0, bound)` by multiply-shift on the 64-bit output.
    ///
    /// The modulo bias is below `bound / 2^64`, i.e. astronomically small for
    /// the color counts and index ranges used here; we accept it and document
    /// it rather than paying for rejection sampling.
    #[inline]
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// Uniform `i64` in the inclusive range `[lo, hi]`.
    #[inline]
    pub fn next_in_range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi as i128 - lo as i128 + 1) as u64;
        lo.wrapping_add(self.next_below(span) as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_matches_counter_mode() {
        let mut g = SplitMix64::new(0xDEADBEEF);
        for i in 0..100 {
            assert_eq!(g.next_u64(), value_at(0xDEADBEEF, i));
        }
    }

    #[test]
    fn reference_vector_seed_zero() {
        // First outputs of SplitMix64 with seed 0, widely published as the
        // seeding sequence of xoshiro-family generators.
        let mut g = SplitMix64::new(0);
        assert_eq!(g.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(g.next_u64(), 0x6E789E6AA1B965F4);
        assert_eq!(g.next_u64(), 0x06C45D188009454F);
    }

    #[test]
    fn next_below_in_range_and_deterministic() {
        let mut g = SplitMix64::new(7);
        let mut h = SplitMix64::new(7);
        for _ in 0..1000 {
            let v = g.next_below(13);
            assert!(v < 13);
            assert_eq!(v, h.next_below(13));
        }
    }

    #[test]
    fn derive_seed_changes_with_index() {
        let a = derive_seed(42, 0);
        let b = derive_seed(42, 1);
        assert_ne!(a, b);
    }
}
