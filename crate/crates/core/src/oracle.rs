//! Brute-force reference computations used to check the testers.

use std::collections::VecDeque;

use serde::Serialize;

use crate::analysis::AnalyzedRdfa;
use crate::automata::{Dfa, Rdfa, StateId, Symbol};
use crate::error::{Error, Result};

/// The last `n` symbols of `pad^n · stream`.
#[derive(Clone, Debug)]
pub struct WindowBuffer {
    buf: VecDeque<Symbol>,
}

impl WindowBuffer {
    pub fn new(n: usize, pad: Symbol) -> Self {
        Self { buf: std::iter::repeat_n(pad, n).collect() }
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    pub fn push(&mut self, a: Symbol) {
        if self.buf.is_empty() {
            return;
        }
        self.buf.pop_front();
        self.buf.push_back(a);
    }

    pub fn contents(&self) -> Vec<Symbol> {
        self.buf.iter().copied().collect()
    }
}

/// `last_n(pad^n · stream)`.
pub fn active_window(stream: &[Symbol], n: usize, pad: Symbol) -> Vec<Symbol> {
    let mut window = vec![pad; n.saturating_sub(stream.len())];
    window.extend_from_slice(&stream[stream.len().saturating_sub(n)..]);
    window
}

/// A distance in `ℕ ∪ {∞}`; `Infinite` compares above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Dist {
    Finite(usize),
    Infinite,
}

impl Dist {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }
}

impl std::fmt::Display for Dist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Infinite => f.write_str("inf"),
        }
    }
}

/// Number of positions where `u` and `v` differ.
pub fn hamming_distance(u: &[Symbol], v: &[Symbol]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count())
}

/// Hamming distance from `w` to the nearest word of `L ∩ Σ^|w|`.
pub fn distance_to_language(w: &[Symbol], dfa: &Dfa) -> Dist {
    let n = dfa.num_states();
    let mut cost: Vec<Option<usize>> = vec![None; n];
    cost[dfa.initial()] = Some(0);
    for &b in w {
        let mut next: Vec<Option<usize>> = vec![None; n];
        for q in 0..n {
            let Some(c) = cost[q] else { continue };
            for (a, &r) in dfa.transitions()[q].iter().enumerate() {
                let d = c + usize::from(a != b);
                if next[r].is_none_or(|old| d < old) {
                    next[r] = Some(d);
                }
            }
        }
        cost = next;
    }
    (0..n)
        .filter(|&q| dfa.is_final(q))
        .filter_map(|q| cost[q])
        .min()
        .map_or(Dist::Infinite, Dist::Finite)
}

/// `layers[i][q]`: some word of length `i` leads from `q` to a final state.
fn backward_layers(rdfa: &Rdfa, depth: usize) -> Vec<Vec<bool>> {
    let mut layers = vec![rdfa.finals().to_vec()];
    for _ in 0..depth {
        let prev = layers.last().expect("nonempty");
        let next = rdfa.transitions().iter().map(|row| row.iter().any(|&r| prev[r])).collect();
        layers.push(next);
    }
    layers
}

/// Least `i` such that some word of `L ∩ Σ^|w|` agrees with `w` on every
/// position after the first `i`.
pub fn prefix_distance_to_language(w: &[Symbol], rdfa: &Rdfa) -> Dist {
    let n = w.len();
    let layers = backward_layers(rdfa, n);
    let trace = rdfa.trace(w, rdfa.initial());
    (0..=n)
        .find(|&i| layers[i][trace[n - i]])
        .map_or(Dist::Infinite, Dist::Finite)
}

/// A run of a right-to-left automaton in reading order: `states[0]` is the
/// start and `states[i + 1] = δ(symbols[i], states[i])`. The word it reads is
/// `symbols` reversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub states: Vec<StateId>,
    pub symbols: Vec<Symbol>,
}

impl Run {
    pub fn from_word(rdfa: &Rdfa, start: StateId, word: &[Symbol]) -> Self {
        Self { states: rdfa.trace(word, start), symbols: word.iter().rev().copied().collect() }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn start(&self) -> StateId {
        self.states[0]
    }

    pub fn end(&self) -> StateId {
        *self.states.last().expect("runs have a start state")
    }

    /// The word read by the run, leftmost symbol first.
    pub fn word(&self) -> Vec<Symbol> {
        self.symbols.iter().rev().copied().collect()
    }
}

fn guard(analyzed: &AnalyzedRdfa, n: usize) -> Result<()> {
    let limit = analyzed.t() + 2 * analyzed.g() + 8;
    if n > limit {
        return Err(Error::GuardExceeded { n, limit });
    }
    Ok(())
}

/// Some accepting run of length `n` from `q`, found by layered search.
pub fn exhaustive_accepting_run(analyzed: &AnalyzedRdfa, q: StateId, n: usize) -> Result<Option<Run>> {
    guard(analyzed, n)?;
    let rdfa = analyzed.rdfa();
    let layers = backward_layers(rdfa, n);
    if !layers[n][q] {
        return Ok(None);
    }
    let mut run = Run { states: vec![q], symbols: Vec::with_capacity(n) };
    let mut cur = q;
    for remaining in (0..n).rev() {
        let a = rdfa
            .alphabet()
            .symbols()
            .find(|&a| layers[remaining][rdfa.step(a, cur)])
            .expect("layer membership guarantees a continuation");
        cur = rdfa.step(a, cur);
        run.symbols.push(a);
        run.states.push(cur);
    }
    Ok(Some(run))
}

/// Some accepting run `π` of length `n` from the start of `rho` shares all
/// but at most `t` of the last-read transitions of `rho`: `rho = ρ₁ρ₂`,
/// `π = π′ρ₂` with `|ρ₁| ≤ t`.
pub fn check_t_simulation(analyzed: &AnalyzedRdfa, rho: &Run, n: usize) -> Result<bool> {
    guard(analyzed, n)?;
    if rho.len() > n {
        return Err(Error::Parameter(format!("run of length {} exceeds n = {n}", rho.len())));
    }
    let layers = backward_layers(analyzed.rdfa(), n);
    let k = analyzed.t().min(rho.len());
    Ok((rho.len() - k..=rho.len()).any(|shared| layers[n - shared][rho.states[shared]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{Alphabet, Language};

    fn lang(pattern: &str) -> (Alphabet, Language) {
        let sigma = Alphabet::new("ab".chars()).unwrap();
        let l = Language::from_regex(pattern, &sigma).unwrap();
        (sigma, l)
    }

    #[test]
    fn window_buffer_matches_definition() {
        let mut buf = WindowBuffer::new(3, 0);
        assert_eq!(buf.contents(), vec![0, 0, 0]);
        for &a in &[1, 1, 0, 1] {
            buf.push(a);
        }
        assert_eq!(buf.contents(), vec![1, 0, 1]);
        assert_eq!(active_window(&[1, 1, 0, 1], 3, 0), vec![1, 0, 1]);
        assert_eq!(active_window(&[1], 3, 0), vec![0, 0, 1]);
    }

    #[test]
    fn hamming() {
        assert_eq!(hamming_distance(&[0, 1], &[0, 1]).unwrap(), 0);
        assert_eq!(hamming_distance(&[1, 1, 1, 1], &[0, 0, 0, 0]).unwrap(), 4);
        assert!(matches!(hamming_distance(&[0], &[0, 1]), Err(Error::LengthMismatch(1, 2))));
    }

    #[test]
    fn distances() {
        let (s, l) = lang("a*");
        assert_eq!(distance_to_language(&s.encode("aaaa").unwrap(), l.dfa()), Dist::Finite(0));
        assert_eq!(prefix_distance_to_language(&s.encode("baaa").unwrap(), l.rdfa()), Dist::Finite(1));
        assert_eq!(prefix_distance_to_language(&s.encode("aaab").unwrap(), l.rdfa()), Dist::Finite(4));
        let (s, l) = lang("(.a)*");
        assert_eq!(distance_to_language(&s.encode("bbbb").unwrap(), l.dfa()), Dist::Finite(2));
        let (s, l) = lang("(aa)*");
        assert_eq!(distance_to_language(&s.encode("ab").unwrap(), l.dfa()), Dist::Finite(1));
        assert_eq!(distance_to_language(&s.encode("aaa").unwrap(), l.dfa()), Dist::Infinite);
        assert_eq!(prefix_distance_to_language(&s.encode("aaa").unwrap(), l.rdfa()), Dist::Infinite);
        assert!(Dist::Finite(usize::MAX) < Dist::Infinite);
    }

    #[test]
    fn runs_and_simulation() {
        let sigma = Alphabet::new("a".chars()).unwrap();
        let l = Language::from_regex("(aa)*", &sigma).unwrap();
        let analyzed = AnalyzedRdfa::new(l.rdfa()).unwrap();
        let p0 = analyzed.rdfa().initial();
        let run = exhaustive_accepting_run(&analyzed, p0, 4).unwrap().unwrap();
        assert_eq!(run.len(), 4);
        assert!(analyzed.rdfa().is_final(run.end()));
        assert!(exhaustive_accepting_run(&analyzed, p0, 3).unwrap().is_none());
        let rho = Run::from_word(analyzed.rdfa(), p0, &[0, 0]);
        assert!(check_t_simulation(&analyzed, &rho, 4).unwrap());
        assert!(matches!(
            check_t_simulation(&analyzed, &rho, 100),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
