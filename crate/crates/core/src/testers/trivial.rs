use super::{Decision, Tester};
use crate::analysis::{length_set, EventuallyPeriodicSet};
use crate::automata::{Dfa, Symbol};
use crate::error::Result;

/// Constant-space tester: accepts every window iff `n` is the length of some
/// word of the language.
#[derive(Clone, Debug)]
pub struct TrivialTester {
    n: usize,
    accept: bool,
}

impl TrivialTester {
    pub fn new(lengths: &EventuallyPeriodicSet, n: usize) -> Self {
        Self { n, accept: lengths.contains(n) }
    }

    pub fn for_dfa(dfa: &Dfa, n: usize) -> Result<Self> {
        Ok(Self::new(&length_set(&dfa.to_nfa())?, n))
    }
}

impl Tester for TrivialTester {
    fn window(&self) -> usize {
        self.n
    }

    fn feed(&mut self, _: Symbol) {}

    fn decide(&self) -> Decision {
        Decision::from_bool(self.accept)
    }

    fn state_bits(&self) -> u64 {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decision_is_fixed_by_n() {
        let even = EventuallyPeriodicSet::progression(0, 2);
        let mut t = TrivialTester::new(&even, 7);
        t.feed_all(&[0, 1, 0]);
        assert!(!t.decide().is_accept());
        assert!(TrivialTester::new(&even, 8).decide().is_accept());
    }
}
