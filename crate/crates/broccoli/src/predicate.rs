//! Axis-aligned threshold predicates and the discretised grids the search
//! draws them from.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::state::{StateBounds, StateVector};

/// An axis-aligned predicate `[s_dim >= threshold]`, compared with plain
/// IEEE-754 `>=` — no epsilon.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Predicate {
    pub dim: usize,
    pub threshold: f64,
}

impl Predicate {
    pub fn evaluate(&self, state: &StateVector) -> bool {
        state[self.dim] >= self.threshold
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{} >= {}", self.dim, self.threshold)
    }
}

/// Hard sanity cap on thresholds per dimension; a grid this fine is a
/// configuration mistake, not a search problem.
const MAX_THRESHOLDS_PER_DIM: usize = 1_000_000;

/// The finite predicate pool: per dimension, a strictly increasing list of
/// thresholds inside `(lo_i, hi_i]`. The lower bound itself is excluded
/// because `[s_i >= lo_i]` is a tautology on the declared domain; individual
/// dimensions may be empty as long as one is not.
#[derive(Clone, Debug, PartialEq)]
pub struct PredicateSpace {
    bounds: StateBounds,
    thresholds: Vec<Vec<f64>>,
}

impl PredicateSpace {
    /// Checked construction from explicit per-dimension threshold lists.
    pub fn from_thresholds(
        bounds: StateBounds,
        thresholds: Vec<Vec<f64>>,
    ) -> Result<Self, ConfigError> {
        if thresholds.len() != bounds.dim() {
            return Err(ConfigError::DimensionMismatch {
                dim: 0,
                got: thresholds.len(),
                want: bounds.dim(),
            });
        }
        for (dim, ts) in thresholds.iter().enumerate() {
            let (lo, hi) = bounds.interval(dim);
            let increasing = ts.windows(2).all(|w| w[0] < w[1]);
            let in_range = ts.iter().all(|&t| lo < t && t <= hi);
            if !(increasing && in_range) {
                return Err(ConfigError::BadThresholds { dim });
            }
        }
        Ok(PredicateSpace { bounds, thresholds })
    }

    /// Arithmetic grid `v0 + m * v_plus` (m = 0, 1, 2, ...) per dimension,
    /// clipped to `(lo_i, hi_i]`.
    pub fn from_offset_increments(
        bounds: StateBounds,
        params: &[(f64, f64)],
    ) -> Result<Self, ConfigError> {
        if params.len() != bounds.dim() {
            return Err(ConfigError::DimensionMismatch {
                dim: 0,
                got: params.len(),
                want: bounds.dim(),
            });
        }
        let mut thresholds = Vec::with_capacity(params.len());
        for (dim, &(v0, v_plus)) in params.iter().enumerate() {
            if !(v_plus.is_finite() && v_plus > 0.0) || !v0.is_finite() {
                return Err(ConfigError::BadIncrement {
                    dim,
                    increment: v_plus,
                });
            }
            let (lo, hi) = bounds.interval(dim);
            let mut ts = Vec::new();
            // start near the lower bound rather than at m = 0 so a far-away
            // v0 does not cost millions of iterations; the per-value range
            // check below keeps this exact.
            let mut m: u64 = if v0 < lo {
                ((lo - v0) / v_plus).floor().max(0.0) as u64
            } else {
                0
            };
            loop {
                let t = v0 + (m as f64) * v_plus;
                if t > hi {
                    break;
                }
                if t > lo && ts.last().is_none_or(|&last| t > last) {
                    if ts.len() == MAX_THRESHOLDS_PER_DIM {
                        return Err(ConfigError::GridTooLarge {
                            dim,
                            limit: MAX_THRESHOLDS_PER_DIM,
                        });
                    }
                    ts.push(t);
                }
                m += 1;
            }
            thresholds.push(ts);
        }
        Self::require_some_threshold(bounds, thresholds)
    }

    /// Grid anchored at the lower bound: thresholds `lo_i + m * inc_i`.
    pub fn from_increments(bounds: StateBounds, increments: &[f64]) -> Result<Self, ConfigError> {
        if increments.len() != bounds.dim() {
            return Err(ConfigError::DimensionMismatch {
                dim: 0,
                got: increments.len(),
                want: bounds.dim(),
            });
        }
        let params: Vec<(f64, f64)> = increments
            .iter()
            .enumerate()
            .map(|(dim, &inc)| (bounds.lo(dim), inc))
            .collect();
        Self::from_offset_increments(bounds, &params)
    }

    /// Count scheme: `count` thresholds per dimension at
    /// `lo_i + j * (hi_i - lo_i) / count` for j = 1..=count (excludes `lo_i`,
    /// aims at `hi_i`; values pushed above `hi_i` by rounding are dropped).
    pub fn from_counts(bounds: StateBounds, counts: &[usize]) -> Result<Self, ConfigError> {
        if counts.len() != bounds.dim() {
            return Err(ConfigError::DimensionMismatch {
                dim: 0,
                got: counts.len(),
                want: bounds.dim(),
            });
        }
        let mut thresholds = Vec::with_capacity(counts.len());
        for (dim, &count) in counts.iter().enumerate() {
            if count == 0 {
                return Err(ConfigError::BadCount { dim });
            }
            if count > MAX_THRESHOLDS_PER_DIM {
                return Err(ConfigError::GridTooLarge {
                    dim,
                    limit: MAX_THRESHOLDS_PER_DIM,
                });
            }
            let (lo, hi) = bounds.interval(dim);
            let step = (hi - lo) / count as f64;
            let mut ts = Vec::with_capacity(count);
            for j in 1..=count {
                let t = lo + (j as f64) * step;
                if lo < t && t <= hi && ts.last().is_none_or(|&last| t > last) {
                    ts.push(t);
                }
            }
            thresholds.push(ts);
        }
        Self::require_some_threshold(bounds, thresholds)
    }

    /// Uniform count scheme across all dimensions.
    pub fn from_uniform_count(bounds: StateBounds, count: usize) -> Result<Self, ConfigError> {
        let counts = vec![count; bounds.dim()];
        Self::from_counts(bounds, &counts)
    }

    fn require_some_threshold(
        bounds: StateBounds,
        thresholds: Vec<Vec<f64>>,
    ) -> Result<Self, ConfigError> {
        if thresholds.iter().all(|ts| ts.is_empty()) {
            return Err(ConfigError::EmptyPredicateSpace);
        }
        Ok(PredicateSpace { bounds, thresholds })
    }

    /// An explicitly empty pool (no thresholds in any dimension); the search
    /// then degenerates to constant-action leaf trees.
    pub fn empty(bounds: StateBounds) -> Self {
        let thresholds = vec![Vec::new(); bounds.dim()];
        PredicateSpace { bounds, thresholds }
    }

    pub fn bounds(&self) -> &StateBounds {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.thresholds.len()
    }

    pub fn thresholds(&self, dim: usize) -> &[f64] {
        &self.thresholds[dim]
    }

    /// Total number of predicates in the pool.
    pub fn len(&self) -> usize {
        self.thresholds.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: &Predicate) -> bool {
        p.dim < self.dim()
            && self.thresholds[p.dim]
                .binary_search_by(|t| t.partial_cmp(&p.threshold).unwrap())
                .is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bounds(intervals: &[(f64, f64)]) -> StateBounds {
        StateBounds::new(intervals.to_vec()).unwrap()
    }

    #[test]
    fn predicate_is_plain_ge() {
        let p = Predicate {
            dim: 1,
            threshold: 2.0,
        };
        assert!(p.evaluate(&[0.0, 2.0].into()));
        assert!(p.evaluate(&[0.0, 2.5].into()));
        assert!(!p.evaluate(&[5.0, 1.9999999999999998].into()));
    }

    #[test]
    fn unit_offset_grid_on_unit_interval() {
        // bounds [0, 3] with v0 = v+ = 1 yields {1, 2, 3}: the tautological
        // threshold 0 is excluded, the upper bound included
        let s =
            PredicateSpace::from_offset_increments(bounds(&[(0.0, 3.0)]), &[(1.0, 1.0)]).unwrap();
        assert_eq!(s.thresholds(0), &[1.0, 2.0, 3.0]);
        // same grid via v0 = 0: the m = 0 value sits on the lower bound and
        // is dropped as a tautology
        let s =
            PredicateSpace::from_offset_increments(bounds(&[(0.0, 3.0)]), &[(0.0, 1.0)]).unwrap();
        assert_eq!(s.thresholds(0), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn offset_far_below_lower_bound() {
        let s =
            PredicateSpace::from_offset_increments(bounds(&[(0.0, 3.0)]), &[(-1e9, 1.0)]).unwrap();
        assert_eq!(s.thresholds(0), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn count_grid_golden_values() {
        // frozen IEEE-754 results of -1.2 + j * ((0.6 - -1.2) / 5)
        let s = PredicateSpace::from_uniform_count(bounds(&[(-1.2, 0.6)]), 5).unwrap();
        assert_eq!(
            s.thresholds(0),
            &[-0.84, -0.48, -0.11999999999999988, 0.24, 0.5999999999999999]
        );
    }

    #[test]
    fn increment_grid_golden_sizes() {
        // mountain-car style grid; the top-of-range x threshold lands one ulp
        // above 0.6 and is dropped, the velocity grid contains an exact 0.0
        let b = bounds(&[(-1.2, 0.6), (-0.07, 0.07)]);
        let s = PredicateSpace::from_increments(b, &[0.05, 0.005]).unwrap();
        assert_eq!(s.thresholds(0).len(), 35);
        assert_eq!(s.thresholds(0)[0], -1.15);
        assert_eq!(*s.thresholds(0).last().unwrap(), 0.55);
        assert_eq!(s.thresholds(1).len(), 28);
        assert!(s.thresholds(1).contains(&0.0));
        assert_eq!(*s.thresholds(1).last().unwrap(), 0.07);
        assert_eq!(s.len(), 63);
    }

    #[test]
    fn grids_are_strictly_increasing_and_in_range() {
        let b = bounds(&[(-2.4, 2.4), (-3.0, 3.0)]);
        let s = PredicateSpace::from_increments(b.clone(), &[0.1, 0.1]).unwrap();
        for dim in 0..s.dim() {
            let ts = s.thresholds(dim);
            assert!(ts.windows(2).all(|w| w[0] < w[1]));
            assert!(ts.iter().all(|&t| b.lo(dim) < t && t <= b.hi(dim)));
        }
    }

    #[test]
    fn empty_single_dimension_is_allowed() {
        // increment larger than the interval leaves dimension 0 empty
        let b = bounds(&[(0.0, 1.0), (0.0, 10.0)]);
        let s = PredicateSpace::from_increments(b, &[5.0, 5.0]).unwrap();
        assert!(s.thresholds(0).is_empty());
        assert_eq!(s.thresholds(1), &[5.0, 10.0]);
    }

    #[test]
    fn fully_empty_grid_is_a_config_error() {
        let b = bounds(&[(0.0, 1.0), (0.0, 1.0)]);
        assert!(matches!(
            PredicateSpace::from_increments(b, &[5.0, 5.0]),
            Err(ConfigError::EmptyPredicateSpace)
        ));
    }

    #[test]
    fn bad_parameters_are_config_errors() {
        let b = bounds(&[(0.0, 1.0)]);
        assert!(PredicateSpace::from_increments(b.clone(), &[0.0]).is_err());
        assert!(PredicateSpace::from_increments(b.clone(), &[-0.1]).is_err());
        assert!(PredicateSpace::from_increments(b.clone(), &[0.1, 0.1]).is_err());
        assert!(PredicateSpace::from_counts(b.clone(), &[0]).is_err());
        assert!(PredicateSpace::from_thresholds(b.clone(), vec![vec![0.0, 0.5]]).is_err());
        assert!(PredicateSpace::from_thresholds(b.clone(), vec![vec![0.5, 0.5]]).is_err());
        assert!(PredicateSpace::from_thresholds(b, vec![vec![0.5, 1.0]]).is_ok());
    }

    #[test]
    fn explicit_empty_pool_for_leaf_only_search() {
        let s = PredicateSpace::empty(bounds(&[(0.0, 1.0)]));
        assert!(s.is_empty());
        assert_eq!(s.dim(), 1);
    }
}
