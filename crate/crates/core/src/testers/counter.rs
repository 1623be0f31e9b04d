use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::automata::ceil_log2;
use crate::error::{Error, Result};

/// Parameters of an `(h, ℓ)`-counter built from `copies` independent bits,
/// each of which is set with probability `p` on every increment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CounterParams {
    h: f64,
    l: f64,
    xi: f64,
    p: f64,
    copies: u64,
}

impl CounterParams {
    /// Counter that errs with probability at most `1/(3·states)` below `l`
    /// and at or above `h`.
    pub fn new(h: u64, l: f64, states: usize) -> Result<Self> {
        let hf = h as f64;
        if !(l < hf) || h == 0 {
            return Err(Error::Parameter(format!("counter needs l < h, got h = {h}, l = {l}")));
        }
        let xi = (hf - l) / hf;
        let p = 1.0 - (0.5 - xi / 8.0).powf(1.0 / hf);
        let mut copies = Self::required_copies(xi, states);
        if copies.is_multiple_of(2) {
            copies += 1;
        }
        Ok(Self { h: hf, l, xi, p, copies })
    }

    /// `h = n − t` and `ℓ = (1 − ε)n + t + 1`.
    pub fn for_window(n: usize, eps: f64, t: usize, states: usize) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::Parameter(format!("epsilon must lie in (0, 1], got {eps}")));
        }
        if eps * (n as f64) < t as f64 || n < t {
            return Err(Error::Parameter(format!("εn = {} is below t = {t}", eps * n as f64)));
        }
        let l = (1.0 - eps) * n as f64 + t as f64 + 1.0;
        Self::new((n - t) as u64, l, states)
    }

    /// `⌈96 ln(3·states) / ξ²⌉`.
    pub fn required_copies(xi: f64, states: usize) -> u64 {
        (96.0 * (3.0 * states as f64).ln() / (xi * xi)).ceil() as u64
    }

    /// A counter with explicit probability and copy count.
    pub fn fixed(p: f64, copies: u64) -> Self {
        assert!((0.0..=1.0).contains(&p) && copies > 0);
        Self { h: f64::NAN, l: f64::NAN, xi: f64::NAN, p, copies }
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn copies(&self) -> u64 {
        self.copies
    }

    /// Sets each unset copy independently with probability `p`.
    pub fn increment<R: Rng + ?Sized>(&self, set: u64, rng: &mut R) -> u64 {
        let unset = self.copies - set;
        if unset == 0 || self.p <= 0.0 {
            return set;
        }
        let fresh = Binomial::new(unset, self.p.min(1.0)).expect("valid binomial").sample(rng);
        set + fresh
    }

    /// Majority vote; ties count as high.
    pub fn is_high(&self, set: u64) -> bool {
        2 * set >= self.copies
    }

    pub fn state_bits(&self) -> u64 {
        ceil_log2(self.copies + 1)
    }
}

/// Deterministic stand-in: high iff at least `threshold` increments happened.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdCounter {
    threshold: u64,
}

impl ThresholdCounter {
    pub fn new(threshold: u64) -> Self {
        Self { threshold }
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }
}

/// Increment rule shared by all counters of one tester; each counter stores
/// only its state as an integer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum CounterModel {
    Bernoulli(CounterParams),
    Threshold(ThresholdCounter),
}

impl CounterModel {
    pub fn increment<R: Rng + ?Sized>(&self, state: u64, rng: &mut R) -> u64 {
        match self {
            CounterModel::Bernoulli(p) => p.increment(state, rng),
            CounterModel::Threshold(t) => (state + 1).min(t.threshold),
        }
    }

    /// One increment drawing from a generator seeded with `seed`; no
    /// generator is built for the deterministic model.
    pub fn increment_seeded(&self, state: u64, seed: u64) -> u64 {
        match self {
            CounterModel::Bernoulli(p) => p.increment(state, &mut ChaCha8Rng::seed_from_u64(seed)),
            CounterModel::Threshold(t) => (state + 1).min(t.threshold),
        }
    }

    pub fn is_high(&self, state: u64) -> bool {
        match self {
            CounterModel::Bernoulli(p) => p.is_high(state),
            CounterModel::Threshold(t) => state >= t.threshold,
        }
    }

    pub fn state_bits(&self) -> u64 {
        match self {
            CounterModel::Bernoulli(p) => p.state_bits(),
            CounterModel::Threshold(t) => ceil_log2(t.threshold + 1),
        }
    }

    /// Whether increments draw randomness.
    pub fn is_random(&self) -> bool {
        matches!(self, CounterModel::Bernoulli(_))
    }
}

/// A single counter owning its randomness.
#[derive(Clone, Debug)]
pub struct ProbabilisticCounter {
    model: CounterModel,
    state: u64,
    rng: ChaCha8Rng,
}

impl ProbabilisticCounter {
    pub fn new(model: CounterModel, seed: u64) -> Self {
        Self { model, state: 0, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn increment(&mut self) {
        self.state = self.model.increment(self.state, &mut self.rng);
    }

    pub fn increment_by(&mut self, k: u64) {
        for _ in 0..k {
            self.increment();
        }
    }

    pub fn is_high(&self) -> bool {
        self.model.is_high(self.state)
    }

    pub fn state(&self) -> u64 {
        self.state
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn copies_formula() {
        assert_eq!(CounterParams::required_copies(0.2, 4), 5964);
        let c = CounterParams::new(1000, 800.0, 4).unwrap();
        assert!((c.xi() - 0.2).abs() < 1e-12);
        assert_eq!(c.copies(), 5965);
        assert!(CounterParams::new(10, 10.0, 4).is_err());
    }

    #[test]
    fn window_parameters() {
        let c = CounterParams::for_window(64, 0.5, 1, 2).unwrap();
        assert_eq!(c.h(), 63.0);
        assert_eq!(c.l(), 34.0);
        assert!(CounterParams::for_window(8, 0.1, 1, 2).is_err());
    }

    #[test]
    fn deterministic_limits() {
        let mut always = ProbabilisticCounter::new(CounterModel::Bernoulli(CounterParams::fixed(1.0, 5)), 1);
        assert!(!always.is_high());
        always.increment();
        assert!(always.is_high());
        let mut never = ProbabilisticCounter::new(CounterModel::Bernoulli(CounterParams::fixed(0.0, 5)), 1);
        never.increment_by(100);
        assert!(!never.is_high());
        let mut stub = ProbabilisticCounter::new(CounterModel::Threshold(ThresholdCounter::new(3)), 0);
        stub.increment_by(2);
        assert!(!stub.is_high());
        stub.increment();
        assert!(stub.is_high());
        stub.increment_by(10);
        assert_eq!(stub.state(), 3);
    }

    #[test]
    fn monotone_under_increments() {
        let params = CounterParams::new(100, 50.0, 3).unwrap();
        let mut c = ProbabilisticCounter::new(CounterModel::Bernoulli(params), 9);
        let mut was_high = false;
        for _ in 0..200 {
            let before = c.state();
            c.increment();
            assert!(c.state() >= before);
            assert!(!was_high || c.is_high());
            was_high = c.is_high();
        }
        assert!(was_high);
    }
}
