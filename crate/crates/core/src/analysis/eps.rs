use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

/// A set of naturals that is periodic beyond a threshold.
///
/// `x < threshold` is a member iff `prefix[x]`; `x >= threshold` is a member
/// iff `residues[x % period]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EventuallyPeriodicSet {
    threshold: usize,
    period: usize,
    prefix: Vec<bool>,
    residues: Vec<bool>,
}

impl EventuallyPeriodicSet {
    /// Builds the set from a membership function that is `period`-periodic
    /// from `threshold` on.
    pub fn from_fn(threshold: usize, period: usize, member: impl Fn(usize) -> bool) -> Self {
        assert!(period > 0, "period must be positive");
        let prefix = (0..threshold).map(&member).collect();
        let mut residues = vec![false; period];
        for x in threshold..threshold + period {
            residues[x % period] = member(x);
        }
        Self { threshold, period, prefix, residues }
    }

    pub fn empty() -> Self {
        Self::from_fn(0, 1, |_| false)
    }

    pub fn naturals() -> Self {
        Self::from_fn(0, 1, |_| true)
    }

    pub fn singleton(x: usize) -> Self {
        Self::from_fn(x + 1, 1, |y| y == x)
    }

    /// `{offset + step·k : k ≥ 0}`.
    pub fn progression(offset: usize, step: usize) -> Self {
        Self::from_fn(offset, step, |y| y >= offset && (y - offset).is_multiple_of(step))
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn residues(&self) -> &[bool] {
        &self.residues
    }

    pub fn contains(&self, x: usize) -> bool {
        if x < self.threshold {
            self.prefix[x]
        } else {
            self.residues[x % self.period]
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.prefix.iter().chain(&self.residues).any(|&b| b)
    }

    pub fn is_finite(&self) -> bool {
        !self.residues.iter().any(|&b| b)
    }

    pub fn min(&self) -> Option<usize> {
        (0..self.threshold + self.period).find(|&x| self.contains(x))
    }

    /// Largest element of a finite set.
    pub fn max(&self) -> Option<usize> {
        if !self.is_finite() {
            return None;
        }
        (0..self.threshold).rev().find(|&x| self.prefix[x])
    }

    /// Same set, described with a larger threshold.
    pub fn with_threshold(&self, threshold: usize) -> Self {
        let t = threshold.max(self.threshold);
        Self::from_fn(t, self.period, |x| self.contains(x))
    }

    /// Same set, described with a multiple of the current period.
    pub fn with_period(&self, period: usize) -> Self {
        assert!(period.is_multiple_of(self.period), "period must be a multiple");
        Self::from_fn(self.threshold, period, |x| self.contains(x))
    }

    /// Minimal period first, then minimal threshold for that period.
    pub fn canonical(&self) -> Self {
        let t = self.threshold;
        let period = (1..=self.period)
            .filter(|d| self.period.is_multiple_of(*d))
            .find(|&d| (t..t + self.period).all(|x| self.contains(x) == self.contains(x + d)))
            .unwrap_or(self.period);
        let mut threshold = t;
        while threshold > 0 && self.contains(threshold - 1) == self.contains(threshold - 1 + period)
        {
            threshold -= 1;
        }
        Self::from_fn(threshold, period, |x| self.contains(x))
    }

    /// Members below `bound`.
    pub fn elements_below(&self, bound: usize) -> Vec<usize> {
        (0..bound).filter(|&x| self.contains(x)).collect()
    }
}

/// Iterates `step` from `start` until a value repeats. Returns the visited
/// values together with the preperiod `mu` and cycle length `lambda`, so that
/// `seq[x] = seq[mu + (x - mu) % lambda]` for `x >= mu`.
pub(crate) fn detect_cycle<S: Clone + Eq + Hash>(
    start: S,
    mut step: impl FnMut(&S) -> S,
    cap: u64,
    what: &'static str,
) -> Result<(Vec<S>, usize, usize)> {
    let mut seen: HashMap<S, usize> = HashMap::new();
    let mut seq = vec![start.clone()];
    seen.insert(start, 0);
    loop {
        if seq.len() as u64 > cap {
            return Err(Error::IterationCap { cap, what });
        }
        let next = step(seq.last().expect("nonempty"));
        if let Some(&mu) = seen.get(&next) {
            let lambda = seq.len() - mu;
            return Ok((seq, mu, lambda));
        }
        seen.insert(next.clone(), seq.len());
        seq.push(next);
    }
}

/// Iteration cap for sequences over `{0,1}^states`.
pub(crate) fn vector_cap(states: usize) -> u64 {
    1u64 << states.min(24)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_shrinks_period_and_threshold() {
        let even = EventuallyPeriodicSet::from_fn(7, 6, |x| x % 2 == 0);
        let c = even.canonical();
        assert_eq!((c.threshold(), c.period()), (0, 2));
        assert!(c.contains(100) && !c.contains(101));
        let later = EventuallyPeriodicSet::from_fn(6, 3, |x| x >= 5).canonical();
        assert_eq!((later.threshold(), later.period()), (5, 1));
    }

    #[test]
    fn basic_shapes() {
        assert!(EventuallyPeriodicSet::empty().is_empty());
        assert_eq!(EventuallyPeriodicSet::singleton(4).max(), Some(4));
        assert_eq!(EventuallyPeriodicSet::naturals().max(), None);
        let p = EventuallyPeriodicSet::progression(3, 4);
        assert_eq!(p.elements_below(16), vec![3, 7, 11, 15]);
        assert_eq!(p.with_threshold(10).elements_below(16), vec![3, 7, 11, 15]);
        assert_eq!(p.with_period(8).elements_below(16), vec![3, 7, 11, 15]);
    }

    #[test]
    fn cycle_detection() {
        let (seq, mu, lambda) = detect_cycle(0u32, |x| (x + 1).min(3) % 7, 100, "t").unwrap();
        assert_eq!((mu, lambda), (3, 1));
        assert_eq!(seq.len(), 4);
        let (_, mu, lambda) = detect_cycle(5u32, |x| (x + 2) % 6, 100, "t").unwrap();
        assert_eq!((mu, lambda), (0, 3));
        assert!(detect_cycle(0u64, |x| x + 1, 10, "t").is_err());
    }
}
