use std::collections::{HashMap, VecDeque};

use super::{Alphabet, Nfa, StateId, Symbol};
use crate::error::{Error, Result};

/// Complete transition table shared by left-to-right and right-to-left
/// deterministic automata. `delta[q][a]` is the successor of `q` on `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Table {
    pub(crate) alphabet: Alphabet,
    pub(crate) delta: Vec<Vec<StateId>>,
    pub(crate) initial: StateId,
    pub(crate) finals: Vec<bool>,
}

impl Table {
    fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<StateId>>,
        initial: StateId,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let count = delta.len();
        if initial >= count {
            return Err(Error::InvalidState { state: initial, count });
        }
        if finals.len() != count {
            return Err(Error::Parameter(format!(
                "final flags cover {} states, table has {count}",
                finals.len()
            )));
        }
        for row in &delta {
            if row.len() != alphabet.len() {
                return Err(Error::Parameter(format!(
                    "transition row has {} entries for {} symbols",
                    row.len(),
                    alphabet.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= count) {
                return Err(Error::InvalidState { state: bad, count });
            }
        }
        Ok(Self { alphabet, delta, initial, finals })
    }

    fn num_states(&self) -> usize {
        self.delta.len()
    }

    /// States reachable from the initial state, in BFS order (symbols in
    /// alphabet order).
    fn reachable_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &r in &self.delta[q] {
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
        }
        order
    }

    /// Keeps the states of `order` (closed under transitions), renumbered by
    /// position in `order`.
    fn restrict(&self, order: &[StateId]) -> Table {
        let mut rename = vec![usize::MAX; self.num_states()];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new;
        }
        let delta = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|&r| rename[r]).collect())
            .collect();
        let finals = order.iter().map(|&q| self.finals[q]).collect();
        Table {
            alphabet: self.alphabet.clone(),
            delta,
            initial: rename[self.initial],
            finals,
        }
    }

    fn trim(&self) -> Table {
        self.restrict(&self.reachable_order())
    }

    /// Moore partition refinement on the reachable part, canonically numbered
    /// in BFS order from the initial state.
    fn minimize(&self) -> Table {
        let t = self.trim();
        let n = t.num_states();
        let mut class: Vec<usize> = t.finals.iter().map(|&f| usize::from(f)).collect();
        let mut classes = class.iter().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = Vec::with_capacity(n);
            for q in 0..n {
                let mut sig = Vec::with_capacity(t.alphabet.len() + 1);
                sig.push(class[q]);
                sig.extend(t.delta[q].iter().map(|&r| class[r]));
                let len = sig_ids.len();
                next.push(*sig_ids.entry(sig).or_insert(len));
            }
            let count = sig_ids.len();
            class = next;
            if count == classes {
                break;
            }
            classes = count;
        }
        let mut representative = vec![usize::MAX; classes];
        for q in (0..n).rev() {
            representative[class[q]] = q;
        }
        let quotient = Table {
            alphabet: t.alphabet.clone(),
            delta: (0..classes)
                .map(|c| t.delta[representative[c]].iter().map(|&r| class[r]).collect())
                .collect(),
            initial: class[t.initial],
            finals: (0..classes).map(|c| t.finals[representative[c]]).collect(),
        };
        quotient.trim()
    }

    /// Transition-reversed automaton: initials are the old finals, the only
    /// final is the old initial.
    fn reversed_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.num_states());
        for (q, row) in self.delta.iter().enumerate() {
            for (a, &r) in row.iter().enumerate() {
                nfa.add_transition(r, a, q).expect("states in range");
            }
        }
        for (q, &f) in self.finals.iter().enumerate() {
            if f {
                nfa.add_initial(q).expect("state in range");
            }
        }
        nfa.add_final(self.initial).expect("state in range");
        nfa
    }

    fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.num_states());
        for (q, row) in self.delta.iter().enumerate() {
            for (a, &r) in row.iter().enumerate() {
                nfa.add_transition(q, a, r).expect("states in range");
            }
        }
        nfa.add_initial(self.initial).expect("state in range");
        for (q, &f) in self.finals.iter().enumerate() {
            if f {
                nfa.add_final(q).expect("state in range");
            }
        }
        nfa
    }
}

/// Complete deterministic automaton reading words left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub(crate) table: Table,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<StateId>>,
        initial: StateId,
        finals: Vec<bool>,
    ) -> Result<Self> {
        Ok(Self { table: Table::new(alphabet, delta, initial, finals)? })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.table.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.table.num_states()
    }

    pub fn initial(&self) -> StateId {
        self.table.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.table.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.table.finals
    }

    pub fn step(&self, q: StateId, a: Symbol) -> StateId {
        self.table.delta[q][a]
    }

    pub fn transitions(&self) -> &[Vec<StateId>] {
        &self.table.delta
    }

    /// `δ(q, w)`, consuming `w` from the left.
    pub fn run(&self, q: StateId, word: &[Symbol]) -> StateId {
        word.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.is_final(self.run(self.initial(), word))
    }

    pub fn is_empty_language(&self) -> bool {
        self.table.reachable_order().iter().all(|&q| !self.is_final(q))
    }

    pub fn minimize(&self) -> Dfa {
        Dfa { table: self.table.minimize() }
    }

    pub fn complement(&self) -> Dfa {
        let mut table = self.table.clone();
        for f in &mut table.finals {
            *f = !*f;
        }
        Dfa { table }
    }

    pub fn to_nfa(&self) -> Nfa {
        self.table.to_nfa()
    }

    pub fn with_finals(&self, finals: Vec<bool>) -> Result<Dfa> {
        Dfa::new(self.alphabet().clone(), self.table.delta.clone(), self.initial(), finals)
    }

    /// Right-to-left automaton for the same language: determinize the
    /// transition-reversed automaton and read its table right to left.
    pub fn reverse_to_rdfa(&self) -> Result<Rdfa> {
        let forward_of_reversal = self.table.reversed_nfa().determinize()?;
        Ok(Rdfa { table: forward_of_reversal.table.minimize() })
    }

    pub fn product_intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x && y)
    }

    pub fn product_union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x || y)
    }

    fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        if !self.alphabet().same_symbols(other.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        let k = self.alphabet().len();
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = vec![(self.initial(), other.initial())];
        ids.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (p, q) = pairs[head];
            head += 1;
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next = (self.step(p, a), other.step(q, a));
                let id = *ids.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| accept(self.is_final(p), other.is_final(q)))
            .collect();
        Dfa::new(self.alphabet().clone(), delta, 0, finals)
    }

    /// Language equality, decided on the reachable pair graph.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// A shortest word in the symmetric difference, if any.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Vec<Symbol>>> {
        if !self.alphabet().same_symbols(other.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        let start = (self.initial(), other.initial());
        let mut parent: HashMap<(StateId, StateId), Option<((StateId, StateId), Symbol)>> =
            HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if self.is_final(p) != other.is_final(q) {
                let mut word = Vec::new();
                let mut cur = (p, q);
                while let Some(&Some((prev, a))) = parent.get(&cur) {
                    word.push(a);
                    cur = prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for a in self.alphabet().symbols() {
                let next = (self.step(p, a), other.step(q, a));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some(((p, q), a)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }
}

/// Complete deterministic automaton reading words right to left:
/// `w ∈ L` iff `δ(w, q0) ∈ F` where the last symbol of `w` is consumed first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rdfa {
    pub(crate) table: Table,
}

impl Rdfa {
    /// `delta[q][a]` is `δ(a, q)`, the state reached from `q` on `a`.
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<StateId>>,
        initial: StateId,
        finals: Vec<bool>,
    ) -> Result<Self> {
        Ok(Self { table: Table::new(alphabet, delta, initial, finals)? })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.table.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.table.num_states()
    }

    pub fn initial(&self) -> StateId {
        self.table.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.table.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.table.finals
    }

    /// `δ(a, q)`.
    pub fn step(&self, a: Symbol, q: StateId) -> StateId {
        self.table.delta[q][a]
    }

    /// Rows indexed by source state, columns by symbol.
    pub fn transitions(&self) -> &[Vec<StateId>] {
        &self.table.delta
    }

    /// `δ(w, q)`, consuming `w` from the right.
    pub fn run(&self, word: &[Symbol], q: StateId) -> StateId {
        word.iter().rev().fold(q, |q, &a| self.step(a, q))
    }

    /// States `p_0 = q, p_1, …, p_|w|` visited while consuming `w` from the right.
    pub fn trace(&self, word: &[Symbol], q: StateId) -> Vec<StateId> {
        let mut states = Vec::with_capacity(word.len() + 1);
        states.push(q);
        let mut cur = q;
        for &a in word.iter().rev() {
            cur = self.step(a, cur);
            states.push(cur);
        }
        states
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.is_final(self.run(word, self.initial()))
    }

    pub fn with_finals(&self, finals: Vec<bool>) -> Result<Rdfa> {
        Rdfa::new(self.alphabet().clone(), self.table.delta.clone(), self.initial(), finals)
    }

    /// Drops states unreachable from the initial state.
    pub fn trim_reachable(&self) -> Rdfa {
        Rdfa { table: self.table.trim() }
    }

    pub fn minimize(&self) -> Rdfa {
        Rdfa { table: self.table.minimize() }
    }

    /// Left-to-right automaton for the same language.
    pub fn to_dfa(&self) -> Result<Dfa> {
        Ok(self.table.reversed_nfa().determinize()?.minimize())
    }
}
