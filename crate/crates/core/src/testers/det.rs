use std::sync::Arc;

use super::{Decision, ExactTester, Tester};
use crate::analysis::AnalyzedRdfa;
use crate::automata::{ceil_log2, StateId, Symbol};

/// SCC-factorization of a run, oldest segment first: pairs
/// `(ℓ_m, q_m) … (ℓ_1, q_1)` where `q_1` is the start state, `ℓ_i` counts the
/// internal segment starting in `q_i` plus its connecting transition for
/// `i < m`, and `ℓ_m` is the length of the last segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathSummary {
    pairs: Vec<(usize, StateId)>,
}

impl PathSummary {
    pub fn empty_run(q: StateId) -> Self {
        Self { pairs: vec![(0, q)] }
    }

    pub fn pairs(&self) -> &[(usize, StateId)] {
        &self.pairs
    }

    pub fn start(&self) -> StateId {
        self.pairs.last().expect("summaries are nonempty").1
    }

    /// Total run length `Σ ℓ_i`.
    pub fn len(&self) -> usize {
        self.pairs.iter().map(|&(l, _)| l).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(ℓ_m, q_m)`.
    pub fn last_segment(&self) -> (usize, StateId) {
        self.pairs[0]
    }

    /// Prepends the transition `δ(b, p) = start` to the run.
    fn extend_right(&mut self, p: StateId, analyzed: &AnalyzedRdfa) {
        let last = self.pairs.last_mut().expect("summaries are nonempty");
        if analyzed.same_component(p, last.1) {
            last.0 += 1;
            last.1 = p;
        } else {
            self.pairs.push((1, p));
        }
    }

    /// Drops the last transition of the run.
    fn trim_left(&mut self) {
        if self.pairs[0].0 == 0 {
            assert!(self.pairs.len() > 1, "cannot trim an empty run");
            self.pairs.remove(0);
        }
        self.pairs[0].0 -= 1;
    }

    fn bits(&self, n: usize, states: usize) -> u64 {
        self.pairs.len() as u64 * (ceil_log2(n as u64 + 1) + ceil_log2(states as u64))
    }
}

/// Summary of the run from `q` on `window`, computed from the explicit run.
pub fn path_summary_of(window: &[Symbol], q: StateId, analyzed: &AnalyzedRdfa) -> PathSummary {
    let trace = analyzed.rdfa().trace(window, q);
    let mut pairs = Vec::new();
    let (mut start, mut len) = (q, 0);
    for step in trace.windows(2) {
        len += 1;
        if !analyzed.same_component(step[0], step[1]) {
            pairs.push((len, start));
            start = step[1];
            len = 0;
        }
    }
    pairs.push((len, start));
    pairs.reverse();
    PathSummary { pairs }
}

#[derive(Clone, Debug)]
enum Mode {
    Exact(ExactTester),
    Summaries(Vec<PathSummary>),
}

/// Deterministic tester keeping one path summary per start state.
#[derive(Clone, Debug)]
pub struct DeterministicTester {
    analyzed: Arc<AnalyzedRdfa>,
    n: usize,
    mode: Mode,
}

impl DeterministicTester {
    /// Falls back to storing the window when `n < |Q|`.
    pub fn new(analyzed: Arc<AnalyzedRdfa>, n: usize) -> Self {
        let states = analyzed.num_states();
        let mode = if n < states {
            Mode::Exact(ExactTester::from_rdfa(analyzed.rdfa(), n))
        } else {
            let mut summaries: Vec<PathSummary> = (0..states).map(PathSummary::empty_run).collect();
            let pad = analyzed.rdfa().alphabet().pad();
            for _ in 0..n {
                summaries = Self::extend(&analyzed, &summaries, pad);
            }
            Mode::Summaries(summaries)
        };
        Self { analyzed, n, mode }
    }

    pub fn is_exact_fallback(&self) -> bool {
        matches!(self.mode, Mode::Exact(_))
    }

    /// Current summary for start state `q`, if summaries are maintained.
    pub fn summary(&self, q: StateId) -> Option<&PathSummary> {
        match &self.mode {
            Mode::Summaries(s) => Some(&s[q]),
            Mode::Exact(_) => None,
        }
    }

    fn extend(analyzed: &AnalyzedRdfa, old: &[PathSummary], b: Symbol) -> Vec<PathSummary> {
        (0..old.len())
            .map(|p| {
                let mut s = old[analyzed.rdfa().step(b, p)].clone();
                s.extend_right(p, analyzed);
                s
            })
            .collect()
    }
}

impl Tester for DeterministicTester {
    fn window(&self) -> usize {
        self.n
    }

    fn feed(&mut self, a: Symbol) {
        match &mut self.mode {
            Mode::Exact(t) => t.feed(a),
            Mode::Summaries(summaries) => {
                let mut next = Self::extend(&self.analyzed, summaries, a);
                for s in &mut next {
                    s.trim_left();
                }
                *summaries = next;
            }
        }
    }

    fn decide(&self) -> Decision {
        match &self.mode {
            Mode::Exact(t) => t.decide(),
            Mode::Summaries(summaries) => {
                let (len, q) = summaries[self.analyzed.rdfa().initial()].last_segment();
                Decision::from_bool(self.analyzed.acc(q).contains(len))
            }
        }
    }

    fn state_bits(&self) -> u64 {
        match &self.mode {
            Mode::Exact(t) => t.state_bits(),
            Mode::Summaries(summaries) => {
                let states = self.analyzed.num_states();
                summaries.iter().map(|s| s.bits(self.n, states)).sum()
            }
        }
    }
}
