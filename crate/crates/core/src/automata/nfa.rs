use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{Alphabet, Dfa, StateId, Symbol};
use crate::error::{Error, Result};

/// Default cap on the number of subset states created by [`Nfa::determinize`].
pub const DEFAULT_STATE_CAP: usize = 1 << 16;

/// Nondeterministic automaton without ε-moves.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    /// `delta[state][symbol]` lists the successor states.
    delta: Vec<Vec<Vec<StateId>>>,
    initials: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
}

impl Nfa {
    /// Creates an automaton with `states` states and no transitions.
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let k = alphabet.len();
        Self {
            alphabet,
            delta: vec![vec![Vec::new(); k]; states],
            initials: BTreeSet::new(),
            finals: BTreeSet::new(),
        }
    }

    fn check(&self, q: StateId) -> Result<()> {
        if q < self.delta.len() {
            Ok(())
        } else {
            Err(Error::InvalidState { state: q, count: self.delta.len() })
        }
    }

    pub fn add_transition(&mut self, from: StateId, symbol: Symbol, to: StateId) -> Result<()> {
        self.check(from)?;
        self.check(to)?;
        if symbol >= self.alphabet.len() {
            return Err(Error::Parameter(format!("symbol code {symbol} out of range")));
        }
        let targets = &mut self.delta[from][symbol];
        if !targets.contains(&to) {
            targets.push(to);
            targets.sort_unstable();
        }
        Ok(())
    }

    pub fn add_initial(&mut self, q: StateId) -> Result<()> {
        self.check(q)?;
        self.initials.insert(q);
        Ok(())
    }

    pub fn add_final(&mut self, q: StateId) -> Result<()> {
        self.check(q)?;
        self.finals.insert(q);
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initials(&self) -> &BTreeSet<StateId> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn successors(&self, q: StateId, a: Symbol) -> &[StateId] {
        &self.delta[q][a]
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut current: BTreeSet<StateId> = self.initials.clone();
        for &a in word {
            current = current.iter().flat_map(|&q| self.delta[q][a].iter().copied()).collect();
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|q| self.finals.contains(q))
    }

    /// Disjoint union; accepts `L(self) ∪ L(other)`.
    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        if !self.alphabet.same_symbols(&other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        let offset = self.num_states();
        let mut out = Nfa::new(self.alphabet.clone(), offset + other.num_states());
        for (src, shift) in [(self, 0), (other, offset)] {
            for q in 0..src.num_states() {
                for a in src.alphabet.symbols() {
                    for &r in src.successors(q, a) {
                        out.add_transition(q + shift, a, r + shift)?;
                    }
                }
            }
            for &q in &src.initials {
                out.add_initial(q + shift)?;
            }
            for &q in &src.finals {
                out.add_final(q + shift)?;
            }
        }
        Ok(out)
    }

    /// Subset construction with the default state cap.
    pub fn determinize(&self) -> Result<Dfa> {
        self.determinize_with_cap(DEFAULT_STATE_CAP)
    }

    /// Subset construction followed by minimization. The result is complete:
    /// the empty subset acts as the sink whenever it is reachable.
    pub fn determinize_with_cap(&self, cap: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let start: Vec<StateId> = self.initials.iter().copied().collect();
        let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut subsets: Vec<Vec<StateId>> = Vec::new();
        let mut delta: Vec<Vec<StateId>> = Vec::new();
        let mut queue = VecDeque::new();
        ids.insert(start.clone(), 0);
        subsets.push(start);
        queue.push_back(0);
        while let Some(id) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next: BTreeSet<StateId> = subsets[id]
                    .iter()
                    .flat_map(|&q| self.delta[q][a].iter().copied())
                    .collect();
                let next: Vec<StateId> = next.into_iter().collect();
                let target = match ids.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = subsets.len();
                        if t >= cap {
                            return Err(Error::StateCapExceeded { cap });
                        }
                        ids.insert(next.clone(), t);
                        subsets.push(next);
                        queue.push_back(t);
                        t
                    }
                };
                row.push(target);
            }
            delta.push(row);
        }
        let finals = subsets
            .iter()
            .map(|s| s.iter().any(|q| self.finals.contains(q)))
            .collect();
        Ok(Dfa::new(self.alphabet.clone(), delta, 0, finals)?.minimize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> Alphabet {
        Alphabet::new("ab".chars()).unwrap()
    }

    #[test]
    fn no_finals_gives_empty_language() {
        let mut nfa = Nfa::new(sigma(), 1);
        nfa.add_initial(0).unwrap();
        nfa.add_transition(0, 0, 0).unwrap();
        let dfa = nfa.determinize().unwrap();
        assert!(dfa.is_empty_language());
    }

    #[test]
    fn universal_nfa_gives_one_state() {
        let mut nfa = Nfa::new(sigma(), 1);
        nfa.add_initial(0).unwrap();
        nfa.add_final(0).unwrap();
        nfa.add_transition(0, 0, 0).unwrap();
        nfa.add_transition(0, 1, 0).unwrap();
        let dfa = nfa.determinize().unwrap();
        assert_eq!(dfa.num_states(), 1);
        assert!(dfa.is_final(0));
    }

    #[test]
    fn cap_fails_loudly() {
        // (a|b)*a(a|b)^3 needs 16 subsets.
        let mut nfa = Nfa::new(sigma(), 5);
        nfa.add_initial(0).unwrap();
        nfa.add_final(4).unwrap();
        for a in 0..2 {
            nfa.add_transition(0, a, 0).unwrap();
        }
        nfa.add_transition(0, 0, 1).unwrap();
        for q in 1..4 {
            for a in 0..2 {
                nfa.add_transition(q, a, q + 1).unwrap();
            }
        }
        assert!(matches!(
            nfa.determinize_with_cap(8),
            Err(Error::StateCapExceeded { cap: 8 })
        ));
        assert_eq!(nfa.determinize().unwrap().num_states(), 16);
    }

    #[test]
    fn invalid_state_rejected() {
        let mut nfa = Nfa::new(sigma(), 2);
        assert!(matches!(
            nfa.add_transition(0, 0, 5),
            Err(Error::InvalidState { state: 5, count: 2 })
        ));
    }
}
