use super::{Decision, Tester};
use crate::automata::{Dfa, Rdfa, Symbol};
use crate::oracle::WindowBuffer;

#[derive(Clone, Debug)]
enum Machine {
    Left(Dfa),
    Right(Rdfa),
}

/// Stores the whole window and decides membership exactly.
#[derive(Clone, Debug)]
pub struct ExactTester {
    machine: Machine,
    window: WindowBuffer,
    symbol_bits: u64,
}

impl ExactTester {
    pub fn from_dfa(dfa: &Dfa, n: usize) -> Self {
        let alphabet = dfa.alphabet();
        Self {
            window: WindowBuffer::new(n, alphabet.pad()),
            symbol_bits: alphabet.symbol_bits(),
            machine: Machine::Left(dfa.clone()),
        }
    }

    pub fn from_rdfa(rdfa: &Rdfa, n: usize) -> Self {
        let alphabet = rdfa.alphabet();
        Self {
            window: WindowBuffer::new(n, alphabet.pad()),
            symbol_bits: alphabet.symbol_bits(),
            machine: Machine::Right(rdfa.clone()),
        }
    }

    pub fn contents(&self) -> Vec<Symbol> {
        self.window.contents()
    }
}

impl Tester for ExactTester {
    fn window(&self) -> usize {
        self.window.len()
    }

    fn feed(&mut self, a: Symbol) {
        self.window.push(a);
    }

    fn decide(&self) -> Decision {
        let w = self.window.contents();
        Decision::from_bool(match &self.machine {
            Machine::Left(d) => d.accepts(&w),
            Machine::Right(r) => r.accepts(&w),
        })
    }

    fn state_bits(&self) -> u64 {
        self.window.len() as u64 * self.symbol_bits
    }
}
