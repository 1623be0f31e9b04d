//! Finite automata over small alphabets: left-to-right DFAs, right-to-left
//! rDFAs, ε-free NFAs, a regex front end and the JSON file format.

mod alphabet;
mod dfa;
mod json;
mod nfa;
mod regex;

pub use alphabet::{ceil_log2, Alphabet, Symbol};
pub use dfa::{Dfa, Rdfa};
pub use json::{AutomatonFile, Direction, LoadedAutomaton, TransitionEntry};
pub use nfa::{Nfa, DEFAULT_STATE_CAP};
pub use regex::parse_regex;

use crate::error::Result;

pub type StateId = usize;

/// A regular language held in both reading directions.
#[derive(Clone, Debug)]
pub struct Language {
    dfa: Dfa,
    rdfa: Rdfa,
}

impl Language {
    pub fn from_regex(pattern: &str, alphabet: &Alphabet) -> Result<Self> {
        Self::from_dfa(parse_regex(pattern, alphabet)?.determinize()?)
    }

    pub fn from_dfa(dfa: Dfa) -> Result<Self> {
        let dfa = dfa.minimize();
        let rdfa = dfa.reverse_to_rdfa()?;
        Ok(Self { dfa, rdfa })
    }

    pub fn from_rdfa(rdfa: Rdfa) -> Result<Self> {
        let dfa = rdfa.to_dfa()?;
        Ok(Self { dfa, rdfa: rdfa.minimize() })
    }

    pub fn from_loaded(loaded: LoadedAutomaton) -> Result<Self> {
        match loaded {
            LoadedAutomaton::Left(dfa) => Self::from_dfa(dfa),
            LoadedAutomaton::Right(rdfa) => Self::from_rdfa(rdfa),
        }
    }

    /// Minimal left-to-right automaton.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// Minimal right-to-left automaton.
    pub fn rdfa(&self) -> &Rdfa {
        &self.rdfa
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    pub fn contains(&self, word: &[Symbol]) -> bool {
        self.dfa.accepts(word)
    }
}
