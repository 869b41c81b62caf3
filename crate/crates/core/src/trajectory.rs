//! Success-probability records indexed by iteration count.

use crate::error::{Error, Result};

/// How far above 1 a computed probability may land before it is treated
/// as a simulator bug instead of floating-point roundoff. Values in
/// `(1, 1 + PROBABILITY_ROUNDOFF]` are clamped to exactly 1.
pub const PROBABILITY_ROUNDOFF: f64 = 1e-9;

/// Clamp a squared amplitude into [0, 1], rejecting values that exceed 1
/// by more than [`PROBABILITY_ROUNDOFF`].
pub(crate) fn clamp_probability(p: f64) -> Result<f64> {
    if !(p <= 1.0 + PROBABILITY_ROUNDOFF) {
        return Err(Error::ProbabilityOverflow { value: p });
    }
    Ok(p.min(1.0))
}

/// Index and value of the largest entry; the earliest index wins ties so
/// the reported optimal iteration count is reproducible.
pub fn find_peak(probabilities: &[f64]) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (j, &p) in probabilities.iter().enumerate() {
        match best {
            Some((_, bp)) if p <= bp => {}
            _ => best = Some((j, p)),
        }
    }
    best.ok_or(Error::EmptyTrajectory)
}

/// Success probabilities of one simulated search, with the peak
/// precomputed. Entry `j` is the probability of measuring the marked
/// state after `j` iterations; entry 0 describes the freshly prepared
/// superposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    probabilities: Vec<f64>,
    peak_index: usize,
    peak_probability: f64,
}

impl Trajectory {
    /// Wrap a probability record, locating its peak. Fails on an empty
    /// record or on any entry above `1 + PROBABILITY_ROUNDOFF` or below 0.
    pub fn from_probabilities(probabilities: Vec<f64>) -> Result<Self> {
        for &p in &probabilities {
            if !(0.0..=1.0 + PROBABILITY_ROUNDOFF).contains(&p) {
                return Err(Error::ProbabilityOverflow { value: p });
            }
        }
        let (peak_index, peak_probability) = find_peak(&probabilities)?;
        Ok(Self {
            probabilities,
            peak_index,
            peak_probability: peak_probability.min(1.0),
        })
    }

    /// All recorded probabilities, indexed by iteration count.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Probability after exactly `j` iterations, if recorded.
    pub fn probability_at(&self, j: usize) -> Option<f64> {
        self.probabilities.get(j).copied()
    }

    /// Iteration count of the peak (earliest on ties) and its probability.
    pub fn peak(&self) -> (usize, f64) {
        (self.peak_index, self.peak_probability)
    }

    /// Iteration count at which the peak occurs.
    pub fn peak_index(&self) -> usize {
        self.peak_index
    }

    /// Largest recorded probability.
    pub fn peak_probability(&self) -> f64 {
        self.peak_probability
    }

    /// Number of recorded entries (iterations plus one).
    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    /// True only for a record with no entries, which `from_probabilities`
    /// refuses to construct.
    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }
}
