use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{amplification_copies, derive_seed, Decision, Tester, TrivialTester, UnionTester};
use crate::analysis::{
    acceptance_with_threshold, is_suffix_free, one_sided_class, split_finals, AnalyzedRdfa,
    EventuallyPeriodicSet, OneSidedClass,
};
use crate::automata::{ceil_log2, Alphabet, Dfa, Rdfa, StateId, Symbol};
use crate::error::{Error, Result};
use crate::oracle::WindowBuffer;

/// Upper bound on the number of path descriptions enumerated for one machine.
pub const DESCRIPTION_CAP: usize = 4096;

/// The transition `δ(symbol, exit) = q_{i+1}` leaving the component entered
/// at `entry = q_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathLink {
    pub entry: StateId,
    pub exit: StateId,
    pub symbol: Symbol,
}

/// The restriction of an rDFA to one chain of components and its connecting
/// transitions, with a single final state.
#[derive(Clone, Debug)]
pub struct PartialRdfa {
    alphabet: Alphabet,
    /// Original ids of the states in `Q_P`, sorted.
    states: Vec<StateId>,
    delta: Vec<Vec<Option<usize>>>,
    initial: usize,
    final_state: usize,
    links: Vec<PathLink>,
    transient: Vec<bool>,
    g: usize,
    r: Vec<usize>,
    s_i: Vec<usize>,
    e: Option<usize>,
    s: usize,
    t: usize,
    acc: Vec<EventuallyPeriodicSet>,
    singleton: Option<Vec<Symbol>>,
}

impl PartialRdfa {
    fn build(analyzed: &AnalyzedRdfa, links: &[PathLink], last: StateId) -> Result<Self> {
        let rdfa = analyzed.rdfa();
        let scc = analyzed.scc();
        let k = links.len();
        let mut members: BTreeSet<StateId> = [last].into();
        for link in links {
            members.extend(scc.component(scc.component_of(link.entry)).iter().copied());
        }
        let states: Vec<StateId> = members.into_iter().collect();
        let local = |q: StateId| states.binary_search(&q).ok();
        let symbols = rdfa.alphabet().len();
        let mut delta = vec![vec![None; symbols]; states.len()];
        for link in links {
            let c = scc.component_of(link.entry);
            for &q in scc.component(c) {
                let lq = local(q).expect("member");
                for a in 0..symbols {
                    let r = rdfa.step(a, q);
                    if scc.component_of(r) == c {
                        delta[lq][a] = local(r);
                    }
                }
            }
            let target = rdfa.step(link.symbol, link.exit);
            delta[local(link.exit).expect("member")][link.symbol] = local(target);
        }
        let transient: Vec<bool> =
            links.iter().map(|l| scc.is_transient_state(l.entry)).collect();
        let initial = local(rdfa.initial()).expect("initial state is on the chain");
        let final_state = local(last).expect("member");
        let g = analyzed.g();

        // Complete with a sink to reuse the acceptance-set machinery.
        let sink = states.len();
        let mut table: Vec<Vec<StateId>> =
            delta.iter().map(|row| row.iter().map(|t| t.unwrap_or(sink)).collect()).collect();
        table.push(vec![sink; symbols]);
        let mut finals = vec![false; sink + 1];
        finals[final_state] = true;
        let completed = Rdfa::new(rdfa.alphabet().clone(), table, initial, finals)?;
        let (mut acc, t, _, info) = acceptance_with_threshold(&completed)?;
        acc.truncate(sink);

        let r: Vec<usize> = links
            .iter()
            .zip(&transient)
            .map(|(l, &tr)| {
                if tr {
                    Ok(1)
                } else {
                    let from = local(l.entry).expect("member");
                    let to = local(l.exit).expect("member");
                    Ok(info.shift(from, to)? + 1)
                }
            })
            .collect::<Result<_>>()?;
        let e = transient.iter().rposition(|&tr| !tr);
        let mut s_i = Vec::new();
        if let Some(e) = e {
            for i in 0..=e {
                let offset: usize = r[i..].iter().sum();
                let set = &acc[local(links[i].entry).expect("member")];
                let expected = |x: usize| x >= offset && (x - offset).is_multiple_of(g);
                let top = set.threshold().max(offset) + g;
                if !(top..top + g).all(|x| set.contains(x) == expected(x)) {
                    return Err(Error::Parameter(
                        "acceptance set of a chain state is not a shifted progression".into(),
                    ));
                }
                let mut s = top;
                while s > 0 && set.contains(s - 1) == expected(s - 1) {
                    s -= 1;
                }
                s_i.push(s);
            }
        }
        let s = s_i.iter().copied().chain([k, r.iter().sum()]).max().unwrap_or(0);
        let singleton = e.is_none().then(|| links.iter().rev().map(|l| l.symbol).collect());
        Ok(Self {
            alphabet: rdfa.alphabet().clone(),
            states,
            delta,
            initial,
            final_state,
            links: links.to_vec(),
            transient,
            g,
            r,
            s_i,
            e,
            s,
            t,
            acc,
            singleton,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Original ids of the states of the partial machine.
    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Local ids of the initial and the final state.
    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn final_state(&self) -> usize {
        self.final_state
    }

    /// Partial transition `δ_P(a, q)` on local ids.
    pub fn step(&self, a: Symbol, q: usize) -> Option<usize> {
        self.delta[q][a]
    }

    /// Chain links `(q_i, a_{i+1}, p_i)` for `i = 0..k`.
    pub fn links(&self) -> &[PathLink] {
        &self.links
    }

    pub fn k(&self) -> usize {
        self.links.len()
    }

    pub fn transient_components(&self) -> &[bool] {
        &self.transient
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn r(&self) -> &[usize] {
        &self.r
    }

    pub fn s_i(&self) -> &[usize] {
        &self.s_i
    }

    pub fn e(&self) -> Option<usize> {
        self.e
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Threshold of the acceptance sets of the partial machine.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Prefix-distance bound `1 + s + (k − 1) + t` for rejected-with-high-
    /// probability windows.
    pub fn gap_constant(&self) -> usize {
        1 + self.s + self.k().saturating_sub(1) + self.t
    }

    /// Acceptance set of local state `q` in the partial machine.
    pub fn acc(&self, q: usize) -> &EventuallyPeriodicSet {
        &self.acc[q]
    }

    /// The only word of the language when every component is transient.
    pub fn singleton(&self) -> Option<&[Symbol]> {
        self.singleton.as_deref()
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut q = self.initial;
        for &a in word.iter().rev() {
            match self.step(a, q) {
                Some(r) => q = r,
                None => return false,
            }
        }
        q == self.final_state
    }
}

/// All path descriptions of a suffix-free machine, each as a partial rDFA.
pub fn enumerate_path_descriptions(analyzed: &AnalyzedRdfa) -> Result<Vec<PartialRdfa>> {
    let rdfa = analyzed.rdfa();
    if !is_suffix_free(rdfa) {
        return Err(Error::NotSuffixFree);
    }
    let n = rdfa.num_states();
    // States from which a final state is reachable.
    let mut live: Vec<bool> = rdfa.finals().to_vec();
    loop {
        let mut changed = false;
        for q in 0..n {
            if !live[q] && rdfa.transitions()[q].iter().any(|&r| live[r]) {
                live[q] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut chains: Vec<(Vec<PathLink>, StateId)> = Vec::new();
    let mut links = Vec::new();
    collect_chains(analyzed, &live, rdfa.initial(), &mut links, &mut chains)?;
    chains.iter().map(|(links, last)| PartialRdfa::build(analyzed, links, *last)).collect()
}

fn collect_chains(
    analyzed: &AnalyzedRdfa,
    live: &[bool],
    entry: StateId,
    links: &mut Vec<PathLink>,
    out: &mut Vec<(Vec<PathLink>, StateId)>,
) -> Result<()> {
    let rdfa = analyzed.rdfa();
    let scc = analyzed.scc();
    if rdfa.is_final(entry) {
        if out.len() >= DESCRIPTION_CAP {
            return Err(Error::IterationCap {
                cap: DESCRIPTION_CAP as u64,
                what: "enumerating path descriptions",
            });
        }
        out.push((links.clone(), entry));
        return Ok(());
    }
    if !live[entry] {
        return Ok(());
    }
    let c = scc.component_of(entry);
    for &exit in scc.component(c) {
        for a in rdfa.alphabet().symbols() {
            let next = rdfa.step(a, exit);
            if scc.component_of(next) != c && live[next] {
                links.push(PathLink { entry, exit, symbol: a });
                collect_chains(analyzed, live, next, links, out)?;
                links.pop();
            }
        }
    }
    Ok(())
}

/// The first `K = max(2, 3⌈log₂(n+1)⌉)` primes.
pub fn prime_pool(n: usize) -> Vec<u64> {
    let k = (3 * ceil_log2(n as u64 + 1) as usize).max(2);
    let mut primes: Vec<u64> = Vec::with_capacity(k);
    let mut candidate = 2u64;
    while primes.len() < k {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// A uniformly random prime from [`prime_pool`].
pub fn sample_prime<R: Rng + ?Sized>(n: usize, rng: &mut R) -> u64 {
    let pool = prime_pool(n);
    pool[rng.random_range(0..pool.len())]
}

/// `ℓ_w(q) mod p` for every state of a partial machine: the length of the
/// shortest suffix of the stream leading from `q` to the final state.
/// `None` stands for `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularLengthTable {
    p: u64,
    values: Vec<Option<u64>>,
}

impl ModularLengthTable {
    /// Table for the empty stream.
    pub fn new(partial: &PartialRdfa, p: u64) -> Self {
        let mut values = vec![None; partial.num_states()];
        values[partial.final_state()] = Some(0);
        Self { p, values }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn value(&self, q: usize) -> Option<u64> {
        self.values[q]
    }

    pub fn update(&mut self, partial: &PartialRdfa, a: Symbol) {
        let p = self.p;
        self.values = (0..self.values.len())
            .map(|q| {
                if q == partial.final_state() {
                    Some(0)
                } else {
                    partial.step(a, q).and_then(|r| self.values[r]).map(|v| (v + 1) % p)
                }
            })
            .collect();
    }
}

#[derive(Clone, Debug)]
enum Part {
    Fixed(bool),
    Exact { partial: Arc<PartialRdfa>, window: WindowBuffer },
    Modular { partial: Arc<PartialRdfa>, length_ok: bool, table: ModularLengthTable },
}

/// One-sided tester for a suffix-free language given by its path
/// descriptions. All partial machines share one random prime.
#[derive(Clone, Debug)]
pub struct OneSidedSuffixFreeTester {
    n: usize,
    prime: u64,
    parts: Vec<Part>,
}

impl OneSidedSuffixFreeTester {
    pub fn new<R: Rng + ?Sized>(partials: Vec<Arc<PartialRdfa>>, n: usize, rng: &mut R) -> Self {
        let p = sample_prime(n, rng);
        Self::with_prime(partials, n, p)
    }

    pub fn with_prime(partials: Vec<Arc<PartialRdfa>>, n: usize, p: u64) -> Self {
        let parts = partials
            .into_iter()
            .map(|partial| {
                if let Some(word) = partial.singleton() {
                    Part::Fixed(word.len() == n)
                } else if n < partial.s() + partial.num_states() {
                    let pad = partial.alphabet().pad();
                    Part::Exact { window: WindowBuffer::new(n, pad), partial }
                } else {
                    let length_ok = partial.acc(partial.initial()).contains(n);
                    let mut table = ModularLengthTable::new(&partial, p);
                    let pad = partial.alphabet().pad();
                    for _ in 0..n {
                        table.update(&partial, pad);
                    }
                    Part::Modular { partial, length_ok, table }
                }
            })
            .collect();
        Self { n, prime: p, parts }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }
}

impl Tester for OneSidedSuffixFreeTester {
    fn window(&self) -> usize {
        self.n
    }

    fn feed(&mut self, a: Symbol) {
        for part in &mut self.parts {
            match part {
                Part::Fixed(_) => {}
                Part::Exact { window, .. } => window.push(a),
                Part::Modular { partial, table, .. } => table.update(partial, a),
            }
        }
    }

    fn decide(&self) -> Decision {
        let n = self.n as u64;
        Decision::from_bool(self.parts.iter().any(|part| match part {
            Part::Fixed(accept) => *accept,
            Part::Exact { partial, window } => partial.accepts(&window.contents()),
            Part::Modular { partial, length_ok, table } => {
                *length_ok && table.value(partial.initial()) == Some(n % table.prime())
            }
        }))
    }

    fn state_bits(&self) -> u64 {
        let value_bits = ceil_log2(self.prime + 1);
        value_bits
            + self
                .parts
                .iter()
                .map(|part| match part {
                    Part::Fixed(_) => 1,
                    Part::Exact { partial, window } => {
                        window.len() as u64 * partial.alphabet().symbol_bits()
                    }
                    Part::Modular { partial, .. } => partial.num_states() as u64 * value_bits,
                })
                .sum::<u64>()
    }
}

/// One-sided tester for a language that is a finite union of a trivial
/// language and suffix-free languages: a trivial tester for the part
/// accepted in non-transient final states plus amplified suffix-free
/// testers for each transient final state.
pub fn one_sided_tester(dfa: &Dfa, n: usize, beta: f64, seed: u64) -> Result<Box<dyn Tester>> {
    match one_sided_class(dfa)? {
        OneSidedClass::LogLowerBound => Err(Error::NoOneSidedTester),
        OneSidedClass::ConstantTrivial => Ok(Box::new(TrivialTester::for_dfa(dfa, n)?)),
        OneSidedClass::LogLog => {
            let analyzed = AnalyzedRdfa::new(&dfa.reverse_to_rdfa()?)?;
            let machine = analyzed.rdfa();
            let (recurrent, transient) = split_finals(machine, analyzed.scc());
            let mut members: Vec<Box<dyn Tester>> = Vec::new();
            if recurrent.iter().any(|&f| f) {
                let part = machine.with_finals(recurrent)?.to_dfa()?;
                members.push(Box::new(TrivialTester::for_dfa(&part, n)?));
            }
            let copies = amplification_copies(beta, transient.len().max(1))?;
            for (idx, &f) in transient.iter().enumerate() {
                let mut finals = vec![false; machine.num_states()];
                finals[f] = true;
                let part = AnalyzedRdfa::new(&machine.with_finals(finals)?)?;
                let partials: Vec<Arc<PartialRdfa>> =
                    enumerate_path_descriptions(&part)?.into_iter().map(Arc::new).collect();
                for copy in 0..copies {
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(derive_seed(&[seed, idx as u64, copy as u64]));
                    members.push(Box::new(OneSidedSuffixFreeTester::new(
                        partials.clone(),
                        n,
                        &mut rng,
                    )));
                }
            }
            Ok(Box::new(UnionTester::new(n, members)))
        }
    }
}
