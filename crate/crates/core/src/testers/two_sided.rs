use std::sync::Arc;

use super::{derive_seed, CounterModel, CounterParams, Decision, ExactTester, Tester};
use crate::analysis::AnalyzedRdfa;
use crate::automata::{ceil_log2, StateId, Symbol};
use crate::error::{Error, Result};

/// `(q_i, r_i, c_i)`: segment start state, length residue modulo `g` of the
/// run to its right, and counter state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    pub q: StateId,
    pub r: usize,
    pub c: u64,
}

/// Triples `(q_m, r_m, c_m) … (q_1, r_1, c_1)`, stored oldest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompactSummary {
    triples: Vec<Triple>,
}

impl CompactSummary {
    pub fn empty_run(q: StateId) -> Self {
        Self { triples: vec![Triple { q, r: 0, c: 0 }] }
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn start(&self) -> StateId {
        self.triples.last().expect("summaries are nonempty").q
    }

    /// Prolongs the represented run by the transition `δ(a, p) = q_1`.
    /// Counter `i` (counted from the start, `i = 1` being `q_1`) draws from a
    /// generator seeded with `derive_seed(&[seed, i])`.
    pub fn prolong(&mut self, p: StateId, analyzed: &AnalyzedRdfa, model: &CounterModel, seed: u64) {
        let g = analyzed.g();
        let m = self.triples.len();
        let same = analyzed.same_component(p, self.start());
        // Triples other than the newest are all bumped; the newest one only on
        // a component change.
        let bumped = if same { m - 1 } else { m };
        for (idx, triple) in self.triples.iter_mut().enumerate().take(bumped) {
            triple.r = (triple.r + 1) % g;
            triple.c = model.increment_seeded(triple.c, derive_seed(&[seed, (m - idx) as u64]));
        }
        if same {
            self.triples.last_mut().expect("nonempty").q = p;
        } else {
            assert!(
                analyzed.scc().precedes(
                    analyzed.scc().component_of(p),
                    analyzed.scc().component_of(self.start())
                ),
                "component chain violated"
            );
            self.triples.push(Triple { q: p, r: 0, c: 0 });
        }
    }

    /// Takes the oldest triple whose counter is low and checks the residue
    /// of the remaining window length.
    pub fn is_accepting(&self, n: usize, analyzed: &AnalyzedRdfa, model: &CounterModel) -> bool {
        let g = analyzed.g();
        let triple = self
            .triples
            .iter()
            .find(|t| !model.is_high(t.c))
            .unwrap_or_else(|| self.triples.last().expect("nonempty"));
        analyzed.acc_mod(triple.q)[(n % g + g - triple.r) % g]
    }

    fn bits(&self, analyzed: &AnalyzedRdfa, model: &CounterModel) -> u64 {
        let per = ceil_log2(analyzed.num_states() as u64)
            + ceil_log2(analyzed.g() as u64)
            + model.state_bits();
        self.triples.len() as u64 * per
    }
}

#[derive(Clone, Debug)]
enum Mode {
    Exact(ExactTester),
    Summaries { model: CounterModel, summaries: Vec<CompactSummary> },
}

/// Constant-space tester with two-sided error and Hamming gap `εn`.
#[derive(Clone, Debug)]
pub struct TwoSidedTester {
    analyzed: Arc<AnalyzedRdfa>,
    n: usize,
    seed: u64,
    position: u64,
    mode: Mode,
}

impl TwoSidedTester {
    /// Uses Bernoulli counters; falls back to storing the window when
    /// `εn < t` or the counter thresholds collapse.
    pub fn new(analyzed: Arc<AnalyzedRdfa>, n: usize, eps: f64, seed: u64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::Parameter(format!("epsilon must lie in (0, 1], got {eps}")));
        }
        match CounterParams::for_window(n, eps, analyzed.t(), analyzed.num_states()) {
            Ok(params) => Ok(Self::with_model(analyzed, n, CounterModel::Bernoulli(params), seed)),
            Err(_) => {
                let exact = ExactTester::from_rdfa(analyzed.rdfa(), n);
                Ok(Self { analyzed, n, seed, position: 0, mode: Mode::Exact(exact) })
            }
        }
    }

    /// Tester with an explicit counter model and no fallback.
    pub fn with_model(analyzed: Arc<AnalyzedRdfa>, n: usize, model: CounterModel, seed: u64) -> Self {
        let summaries = (0..analyzed.num_states()).map(CompactSummary::empty_run).collect();
        let mut tester =
            Self { analyzed, n, seed, position: 0, mode: Mode::Summaries { model, summaries } };
        let pad = tester.analyzed.rdfa().alphabet().pad();
        for _ in 0..n {
            tester.feed(pad);
        }
        tester
    }

    pub fn is_exact_fallback(&self) -> bool {
        matches!(self.mode, Mode::Exact(_))
    }

    pub fn summary(&self, q: StateId) -> Option<&CompactSummary> {
        match &self.mode {
            Mode::Summaries { summaries, .. } => Some(&summaries[q]),
            Mode::Exact(_) => None,
        }
    }

    pub fn counter_model(&self) -> Option<&CounterModel> {
        match &self.mode {
            Mode::Summaries { model, .. } => Some(model),
            Mode::Exact(_) => None,
        }
    }
}

impl Tester for TwoSidedTester {
    fn window(&self) -> usize {
        self.n
    }

    fn feed(&mut self, b: Symbol) {
        match &mut self.mode {
            Mode::Exact(t) => t.feed(b),
            Mode::Summaries { model, summaries } => {
                let rdfa = self.analyzed.rdfa();
                let next = (0..summaries.len())
                    .map(|p| {
                        let mut cs = summaries[rdfa.step(b, p)].clone();
                        let seed = derive_seed(&[self.seed, self.position, p as u64]);
                        cs.prolong(p, &self.analyzed, model, seed);
                        cs
                    })
                    .collect();
                *summaries = next;
            }
        }
        self.position += 1;
    }

    fn decide(&self) -> Decision {
        match &self.mode {
            Mode::Exact(t) => t.decide(),
            Mode::Summaries { model, summaries } => {
                let cs = &summaries[self.analyzed.rdfa().initial()];
                Decision::from_bool(cs.is_accepting(self.n, &self.analyzed, model))
            }
        }
    }

    fn state_bits(&self) -> u64 {
        match &self.mode {
            Mode::Exact(t) => t.state_bits(),
            Mode::Summaries { model, summaries } => {
                summaries.iter().map(|cs| cs.bits(&self.analyzed, model)).sum()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{Alphabet, Language};
    use crate::testers::ThresholdCounter;

    fn analyzed(pattern: &str) -> (Alphabet, Arc<AnalyzedRdfa>) {
        let sigma = Alphabet::new("ab".chars()).unwrap();
        let l = Language::from_regex(pattern, &sigma).unwrap();
        (sigma, Arc::new(AnalyzedRdfa::new(l.rdfa()).unwrap()))
    }

    #[test]
    fn prolong_rules() {
        let (_, a) = analyzed("ba*");
        let model = CounterModel::Threshold(ThresholdCounter::new(100));
        let q0 = a.rdfa().initial();
        let mut cs = CompactSummary::empty_run(q0);
        cs.prolong(q0, &a, &model, 0);
        assert_eq!(cs.triples(), &[Triple { q: q0, r: 0, c: 0 }]);
        // Reading b from q0 leaves the component of q0.
        let qf = a.rdfa().step(1, q0);
        let mut cs = CompactSummary::empty_run(qf);
        cs.prolong(q0, &a, &model, 0);
        assert_eq!(cs.triples(), &[Triple { q: qf, r: 0, c: 1 }, Triple { q: q0, r: 0, c: 0 }]);
    }

    #[test]
    fn fallback_for_small_windows() {
        let (_, a) = analyzed("a*");
        assert!(TwoSidedTester::new(a.clone(), 2, 0.5, 0).unwrap().is_exact_fallback());
        assert!(!TwoSidedTester::new(a.clone(), 64, 0.5, 0).unwrap().is_exact_fallback());
        assert!(TwoSidedTester::new(a, 64, 0.0, 0).is_err());
    }

    #[test]
    fn stub_counter_decisions() {
        let (s, a) = analyzed("a*");
        let n = 16;
        let model = CounterModel::Threshold(ThresholdCounter::new((n - a.t()) as u64));
        let mut t = TwoSidedTester::with_model(a.clone(), n, model, 0);
        t.feed_all(&s.encode(&"a".repeat(20)).unwrap());
        assert!(t.decide().is_accept());
        t.feed_all(&s.encode(&"b".repeat(16)).unwrap());
        assert!(!t.decide().is_accept());
    }
}
