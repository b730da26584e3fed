//! Deterministic, platform-independent initial-state sampling.

use crate::state::StateVector;

/// SplitMix64 (Steele, Lea & Vigna), a published 64-bit generator chosen
/// because it is tiny enough to restate here in full, which pins the sampled
/// states across platforms and toolchains:
///
/// ```text
/// state += 0x9E3779B97F4A7C15
/// z = state
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB
/// output = z ^ (z >> 31)
/// ```
///
/// Outputs map to doubles in `[0, 1)` by taking the top 53 bits:
/// `(output >> 11) * 2^-53`.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform double in `[0, 1)`.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Samples initial states uniformly from per-dimension intervals
/// `[lo_i, hi_i]` (degenerate `lo == hi` pins the component). A given
/// `(seed, intervals, n)` always yields the same states, in the same order:
/// states are drawn one after another, dimensions in ascending order.
#[derive(Clone, Debug)]
pub struct InitialStateSampler {
    seed: u64,
    intervals: Vec<(f64, f64)>,
}

impl InitialStateSampler {
    pub fn new(seed: u64, intervals: Vec<(f64, f64)>) -> Self {
        InitialStateSampler { seed, intervals }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn sample(&self, n: usize) -> Vec<StateVector> {
        let mut rng = SplitMix64::new(self.seed);
        (0..n)
            .map(|_| {
                let values: Vec<f64> = self
                    .intervals
                    .iter()
                    .map(|&(lo, hi)| lo + rng.next_unit() * (hi - lo))
                    .collect();
                StateVector::new(values)
            })
            .collect()
    }
}
