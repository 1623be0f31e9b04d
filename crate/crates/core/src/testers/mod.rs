//! Sliding window testers.
//!
//! Every tester reads a stream one symbol at a time and decides on the active
//! window `last_n(pad^n · w)`.

mod counter;
mod det;
mod exact;
mod one_sided;
mod seed;
mod trivial;
mod two_sided;
mod union;

pub use counter::{CounterModel, CounterParams, ProbabilisticCounter, ThresholdCounter};
pub use det::{path_summary_of, DeterministicTester, PathSummary};
pub use exact::ExactTester;
pub use one_sided::{
    enumerate_path_descriptions, one_sided_tester, prime_pool, sample_prime, ModularLengthTable,
    OneSidedSuffixFreeTester, PartialRdfa, PathLink, DESCRIPTION_CAP,
};
pub use seed::derive_seed;
pub use trivial::TrivialTester;
pub use two_sided::{CompactSummary, Triple, TwoSidedTester};
pub use union::{amplification_copies, UnionTester};

use crate::automata::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn is_accept(self) -> bool {
        self == Decision::Accept
    }

    pub fn from_bool(accept: bool) -> Self {
        if accept {
            Decision::Accept
        } else {
            Decision::Reject
        }
    }
}

/// A streaming algorithm for a fixed window size.
pub trait Tester: Send {
    /// The window size `n`.
    fn window(&self) -> usize;

    fn feed(&mut self, a: Symbol);

    fn decide(&self) -> Decision;

    /// Size of the algorithm's current state in bits.
    fn state_bits(&self) -> u64;

    fn feed_all(&mut self, stream: &[Symbol]) {
        for &a in stream {
            self.feed(a);
        }
    }
}

impl<T: Tester + ?Sized> Tester for Box<T> {
    fn window(&self) -> usize {
        (**self).window()
    }

    fn feed(&mut self, a: Symbol) {
        (**self).feed(a)
    }

    fn decide(&self) -> Decision {
        (**self).decide()
    }

    fn state_bits(&self) -> u64 {
        (**self).state_bits()
    }
}
