//! State vectors, state bounds and action identifiers.

use std::fmt;
use std::ops::Index;

use smallvec::SmallVec;

use crate::error::ConfigError;

/// A point in the environment's state space: a fixed-length vector of finite
/// doubles. The inline capacity covers the built-in environments (d <= 4), so
/// stepping an environment never allocates.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    values: SmallVec<[f64; 4]>,
}

impl StateVector {
    pub fn new(values: impl Into<SmallVec<[f64; 4]>>) -> Self {
        StateVector {
            values: values.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// True when every component is finite (no NaN, no infinities).
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

impl Index<usize> for StateVector {
    type Output = f64;

    fn index(&self, dim: usize) -> &f64 {
        &self.values[dim]
    }
}

impl From<&[f64]> for StateVector {
    fn from(values: &[f64]) -> Self {
        StateVector::new(SmallVec::from_slice(values))
    }
}

impl<const N: usize> From<[f64; N]> for StateVector {
    fn from(values: [f64; N]) -> Self {
        StateVector::new(SmallVec::from_slice(&values))
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A discrete action, drawn from an environment's finite action set.
#[derive(
    Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(transparent)]
pub struct ActionId(pub i64);

impl fmt::Display for ActionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Per-dimension closed intervals `[lo_i, hi_i]` with `lo_i < hi_i`.
///
/// These bound the predicate grid and the admissible initial states; runtime
/// states are free to leave them (the built-in cart-pole, for instance, has
/// unbounded velocities).
#[derive(Clone, Debug, PartialEq)]
pub struct StateBounds {
    intervals: Vec<(f64, f64)>,
}

impl StateBounds {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self, ConfigError> {
        if intervals.is_empty() {
            return Err(ConfigError::EmptyBounds);
        }
        for (dim, &(lo, hi)) in intervals.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(ConfigError::BadInterval { dim, lo, hi });
            }
        }
        Ok(StateBounds { intervals })
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn interval(&self, dim: usize) -> (f64, f64) {
        self.intervals[dim]
    }

    pub fn lo(&self, dim: usize) -> f64 {
        self.intervals[dim].0
    }

    pub fn hi(&self, dim: usize) -> f64 {
        self.intervals[dim].1
    }

    pub fn contains(&self, state: &StateVector) -> bool {
        state.dim() == self.dim()
            && self
                .intervals
                .iter()
                .zip(state.values())
                .all(|(&(lo, hi), &v)| lo <= v && v <= hi)
    }
}
