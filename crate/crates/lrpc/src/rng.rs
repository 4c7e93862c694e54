//! Deterministic pseudo-random generator for all sampling in this crate.
//!
//! Every experiment must be reproducible bit-for-bit across runs, worker
//! counts and re-implementations in other languages, so we use a
//! self-contained SplitMix64 stream instead of an external RNG crate.
//!
//! The exact construction, for anyone reproducing runs elsewhere:
//!
//! * `mix64(z)` is the SplitMix64 finalizer:
//!   `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//!    z *= 0x94D049BB133111EB; z ^= z >> 31` (all wrapping).
//! * A stream with state `s` yields `mix64(s += 0x9E3779B97F4A7C15)`.
//! * The independent stream for trial `i` of an experiment seeded with `s`
//!   starts from state `mix64(s) + mix64((i + 1) * 0x9E3779B97F4A7C15)`
//!   (wrapping add and multiply).
//! * `below(bound)` draws 64-bit values and rejects those below
//!   `(2^64 - bound) mod bound`, then reduces modulo `bound`.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    /// Independent substream for one trial of a seeded experiment.
    ///
    /// Distinct trial indices give streams with unrelated trajectories, so
    /// trials can run on any worker in any order with identical results.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let stream = mix64(seed).wrapping_add(mix64(trial.wrapping_add(1).wrapping_mul(GOLDEN)));
        Rng::new(stream)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform value in `[0, bound)`. `bound` must be nonzero.
    #[inline]
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        if bound == 1 {
            return 0;
        }
        // Rejection threshold for an unbiased reduction.
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let v = self.next_u64();
            if v >= threshold {
                return v % bound;
            }
        }
    }

    /// Uniform base-field coefficient in `[0, q)`.
    #[inline]
    pub fn coeff(&mut self, q: u16) -> u16 {
        self.below(q as u64) as u16
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn trial_streams_differ() {
        let mut a = Rng::for_trial(7, 0);
        let mut b = Rng::for_trial(7, 1);
        let collisions = (0..64).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(collisions, 0);
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = Rng::new(1);
        for bound in [1u64, 2, 3, 5, 7, 31, 1 << 40] {
            for _ in 0..200 {
                assert!(rng.below(bound) < bound);
            }
        }
    }

    #[test]
    fn below_is_roughly_uniform() {
        let mut rng = Rng::new(99);
        let mut counts = [0u32; 5];
        for _ in 0..50_000 {
            counts[rng.below(5) as usize] += 1;
        }
        for &c in &counts {
            assert!(
                (c as i64 - 10_000).abs() < 500,
                "count {c} far from expected 10000"
            );
        }
    }
}
