use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::eps::{detect_cycle, vector_cap, EventuallyPeriodicSet};
use super::scc::SccDecomposition;
use crate::automata::{Alphabet, Dfa, Nfa, Rdfa, StateId, Symbol};
use crate::error::Result;

/// `{|w| : w ∈ L(nfa)}`.
pub fn length_set(nfa: &Nfa) -> Result<EventuallyPeriodicSet> {
    let n = nfa.num_states();
    let start: Vec<bool> = (0..n).map(|q| nfa.initials().contains(&q)).collect();
    let k = nfa.alphabet().len();
    let step = |v: &Vec<bool>| -> Vec<bool> {
        let mut next = vec![false; n];
        for q in (0..n).filter(|&q| v[q]) {
            for a in 0..k {
                for &r in nfa.successors(q, a) {
                    next[r] = true;
                }
            }
        }
        next
    };
    let (seq, mu, lambda) = detect_cycle(start, step, vector_cap(n), "computing a length set")?;
    let member = |v: &Vec<bool>| nfa.finals().iter().any(|&f| v[f]);
    Ok(EventuallyPeriodicSet::from_fn(mu, lambda, |x| {
        member(&seq[if x < mu { x } else { mu + (x - mu) % lambda }])
    })
    .canonical())
}

/// States reachable from the initial state in exactly `i` steps, for each `i`
/// up to the first repetition.
fn forward_layers(dfa: &Dfa) -> Result<Vec<Vec<bool>>> {
    let n = dfa.num_states();
    let mut start = vec![false; n];
    start[dfa.initial()] = true;
    let step = |v: &Vec<bool>| {
        let mut next = vec![false; n];
        for q in (0..n).filter(|&q| v[q]) {
            for &r in &dfa.transitions()[q] {
                next[r] = true;
            }
        }
        next
    };
    Ok(detect_cycle(start, step, vector_cap(n), "enumerating cut languages")?.0)
}

/// States from which a final state is reachable in exactly `j` steps.
fn backward_layers(dfa: &Dfa) -> Result<Vec<Vec<bool>>> {
    let n = dfa.num_states();
    let step = |v: &Vec<bool>| -> Vec<bool> {
        (0..n).map(|q| dfa.transitions()[q].iter().any(|&r| v[r])).collect()
    };
    Ok(detect_cycle(dfa.finals().to_vec(), step, vector_cap(n), "enumerating cut languages")?.0)
}

fn layer_at(layers: &[Vec<bool>], dfa: &Dfa, i: usize, forward: bool) -> Vec<bool> {
    if i < layers.len() {
        return layers[i].clone();
    }
    let mut v = layers.last().expect("nonempty").clone();
    for _ in layers.len() - 1..i {
        let n = dfa.num_states();
        v = if forward {
            let mut next = vec![false; n];
            for q in (0..n).filter(|&q| v[q]) {
                for &r in &dfa.transitions()[q] {
                    next[r] = true;
                }
            }
            next
        } else {
            (0..n).map(|q| dfa.transitions()[q].iter().any(|&r| v[r])).collect()
        };
    }
    v
}

fn cut_nfa(dfa: &Dfa, initials: &[bool], finals: &[bool]) -> Nfa {
    let mut nfa = Nfa::new(dfa.alphabet().clone(), dfa.num_states());
    for (q, row) in dfa.transitions().iter().enumerate() {
        for (a, &r) in row.iter().enumerate() {
            nfa.add_transition(q, a, r).expect("states in range");
        }
        if initials[q] {
            nfa.add_initial(q).expect("state in range");
        }
        if finals[q] {
            nfa.add_final(q).expect("state in range");
        }
    }
    nfa
}

/// Words of `L` with the first `i` and last `j` symbols removed.
pub fn cut_language(dfa: &Dfa, i: usize, j: usize) -> Result<Nfa> {
    let initials = layer_at(&forward_layers(dfa)?, dfa, i, true);
    let finals = layer_at(&backward_layers(dfa)?, dfa, j, false);
    Ok(cut_nfa(dfa, &initials, &finals))
}

/// Automaton accepting exactly the words whose length lies in `lengths`.
fn length_dfa(alphabet: &Alphabet, lengths: &EventuallyPeriodicSet) -> Result<Dfa> {
    let top = lengths.threshold() + lengths.period();
    let delta = (0..top)
        .map(|x| vec![if x + 1 < top { x + 1 } else { lengths.threshold() }; alphabet.len()])
        .collect();
    let finals = (0..top).map(|x| lengths.contains(x)).collect();
    Dfa::new(alphabet.clone(), delta, 0, finals)
}

/// Membership depends only on the length of the word.
pub fn is_length_language(nfa: &Nfa) -> Result<bool> {
    let lengths = length_set(nfa)?;
    length_dfa(nfa.alphabet(), &lengths)?.equivalent(&nfa.determinize()?)
}

/// A pair `(i, j)` for which the cut language is a length language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialityWitness {
    pub i: usize,
    pub j: usize,
}

/// Searches all distinct cut languages for a length language.
pub fn triviality_witness(dfa: &Dfa) -> Result<Option<TrivialityWitness>> {
    let forward = forward_layers(dfa)?;
    let backward = backward_layers(dfa)?;
    for (i, initials) in forward.iter().enumerate() {
        for (j, finals) in backward.iter().enumerate() {
            if is_length_language(&cut_nfa(dfa, initials, finals))? {
                return Ok(Some(TrivialityWitness { i, j }));
            }
        }
    }
    Ok(None)
}

pub fn is_trivial(dfa: &Dfa) -> Result<bool> {
    Ok(triviality_witness(dfa)?.is_some())
}

/// No final state reachable from the initial state leads to a final state
/// by a nonempty run.
pub fn is_suffix_free(rdfa: &Rdfa) -> bool {
    let rdfa = rdfa.trim_reachable();
    let delta = rdfa.transitions();
    (0..rdfa.num_states()).filter(|&f| rdfa.is_final(f)).all(|f| {
        let mut seen = vec![false; rdfa.num_states()];
        let mut queue: VecDeque<StateId> = delta[f].iter().copied().collect();
        while let Some(q) = queue.pop_front() {
            if seen[q] {
                continue;
            }
            if rdfa.is_final(q) {
                return false;
            }
            seen[q] = true;
            queue.extend(delta[q].iter().copied());
        }
        true
    })
}

/// Final states split into those on non-transient components and the
/// transient ones.
pub fn split_finals(rdfa: &Rdfa, scc: &SccDecomposition) -> (Vec<bool>, Vec<StateId>) {
    let mut recurrent = vec![false; rdfa.num_states()];
    let mut transient = Vec::new();
    for q in (0..rdfa.num_states()).filter(|&q| rdfa.is_final(q)) {
        if scc.is_transient_state(q) {
            transient.push(q);
        } else {
            recurrent[q] = true;
        }
    }
    (recurrent, transient)
}

/// Space class of one-sided-error sliding window testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OneSidedClass {
    ConstantTrivial,
    LogLog,
    LogLowerBound,
}

pub fn one_sided_class(dfa: &Dfa) -> Result<OneSidedClass> {
    if is_trivial(dfa)? {
        return Ok(OneSidedClass::ConstantTrivial);
    }
    let rdfa = dfa.reverse_to_rdfa()?;
    let scc = SccDecomposition::of_table(rdfa.transitions());
    let (recurrent, _) = split_finals(&rdfa, &scc);
    let recurrent_part = rdfa.with_finals(recurrent)?.to_dfa()?;
    Ok(if is_trivial(&recurrent_part)? {
        OneSidedClass::LogLog
    } else {
        OneSidedClass::LogLowerBound
    })
}

/// An infinite restriction of `L` to lengths `offset + step·k` whose words
/// all avoid `factor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcludedFactor {
    pub offset: usize,
    pub step: usize,
    pub factor: Vec<Symbol>,
}

/// Transition table of the automaton detecting `pattern` as a factor; state
/// `pattern.len()` is absorbing.
fn factor_automaton(pattern: &[Symbol], symbols: usize) -> Vec<Vec<usize>> {
    let m = pattern.len();
    let mut fail = vec![0; m + 1];
    for i in 1..m {
        let mut k = fail[i];
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k];
        }
        fail[i + 1] = if pattern[i] == pattern[k] { k + 1 } else { 0 };
    }
    let mut delta = vec![vec![0; symbols]; m + 1];
    for s in 0..=m {
        for a in 0..symbols {
            delta[s][a] = if s == m {
                m
            } else if pattern[s] == a {
                s + 1
            } else if s == 0 {
                0
            } else {
                delta[fail[s]][a]
            };
        }
    }
    delta
}

/// Some word of `L` with length in `offset + step·ℕ` contains `factor`.
fn factor_occurs(dfa: &Dfa, offset: usize, step: usize, factor: &[Symbol]) -> bool {
    let k = dfa.alphabet().len();
    let kmp = factor_automaton(factor, k);
    let top = offset + step;
    let next_len = |c: usize| if c + 1 < top { c + 1 } else { offset };
    let start = (dfa.initial(), 0usize, 0usize);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((q, c, s)) = queue.pop_front() {
        if dfa.is_final(q) && c == offset && s == factor.len() {
            return true;
        }
        for a in 0..k {
            let next = (dfa.step(q, a), next_len(c), kmp[s][a]);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    false
}

fn words_of_length(symbols: usize, len: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let total = symbols.checked_pow(len as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut code| {
        let mut word = vec![0; len];
        for slot in word.iter_mut().rev() {
            *slot = code % symbols;
            code /= symbols;
        }
        word
    })
}

/// Searches progressions whose step is a small multiple of the length period
/// and factors up to `max_len` symbols, shortest first.
pub fn find_excluded_factor(dfa: &Dfa, max_len: usize) -> Result<Option<ExcludedFactor>> {
    if is_trivial(dfa)? {
        return Ok(None);
    }
    let lengths = length_set(&dfa.to_nfa())?;
    let k = dfa.alphabet().len();
    for mult in 1..=4 {
        let step = lengths.period() * mult;
        for offset in lengths.threshold()..lengths.threshold() + step {
            if !lengths.contains(offset) {
                continue;
            }
            for len in 1..=max_len {
                for factor in words_of_length(k, len) {
                    if !factor_occurs(dfa, offset, step, &factor) {
                        return Ok(Some(ExcludedFactor { offset, step, factor }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Language;

    fn lang(pattern: &str, alphabet: &str) -> Language {
        Language::from_regex(pattern, &Alphabet::new(alphabet.chars()).unwrap()).unwrap()
    }

    #[test]
    fn length_sets() {
        let l = lang("(ab)*", "ab");
        let lengths = length_set(&l.dfa().to_nfa()).unwrap();
        assert_eq!(lengths.elements_below(7), vec![0, 2, 4, 6]);
    }

    #[test]
    fn length_languages() {
        assert!(is_length_language(&lang("(aa)*", "a").dfa().to_nfa()).unwrap());
        assert!(!is_length_language(&lang("(aa)*", "ab").dfa().to_nfa()).unwrap());
        assert!(!is_length_language(&lang("a*", "ab").dfa().to_nfa()).unwrap());
        assert!(is_length_language(&lang("(..)*", "ab").dfa().to_nfa()).unwrap());
    }

    #[test]
    fn cuts() {
        let l = lang("ba*", "ab");
        let cut = cut_language(l.dfa(), 1, 0).unwrap().determinize().unwrap();
        assert!(cut.equivalent(lang("a*", "ab").dfa()).unwrap());
        let id = cut_language(l.dfa(), 0, 0).unwrap().determinize().unwrap();
        assert!(id.equivalent(l.dfa()).unwrap());
    }

    #[test]
    fn classes() {
        assert_eq!(one_sided_class(lang(".*a", "ab").dfa()).unwrap(), OneSidedClass::ConstantTrivial);
        assert_eq!(one_sided_class(lang("ba*", "ab").dfa()).unwrap(), OneSidedClass::LogLog);
        assert_eq!(one_sided_class(lang("a*", "ab").dfa()).unwrap(), OneSidedClass::LogLowerBound);
    }

    #[test]
    fn suffix_freeness() {
        assert!(is_suffix_free(lang("ba*", "ab").rdfa()));
        assert!(!is_suffix_free(lang("a*", "ab").rdfa()));
        assert!(is_suffix_free(lang("ab|ba|bb", "ab").rdfa()));
    }

    #[test]
    fn excluded_factors() {
        let f = find_excluded_factor(lang("a*", "ab").dfa(), 3).unwrap().unwrap();
        assert_eq!((f.offset, f.step, f.factor), (0, 1, vec![1]));
        let f = find_excluded_factor(lang("(ab)*", "ab").dfa(), 3).unwrap().unwrap();
        assert_eq!((f.offset, f.step, f.factor), (0, 2, vec![0, 0]));
        assert!(find_excluded_factor(lang(".*a", "ab").dfa(), 3).unwrap().is_none());
    }
}
