use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use regwin::analysis::{is_trivial, AnalyzedRdfa};
use regwin::automata::{Language, Symbol};
use regwin::testers::{
    derive_seed, one_sided_tester, Decision, DeterministicTester, ExactTester, Tester,
    TrivialTester, TwoSidedTester,
};

/// Error bound used when composing one-sided testers.
pub const ONE_SIDED_BETA: f64 = 1.0 / 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TesterKind {
    Exact,
    Trivial,
    Det,
    #[serde(alias = "two-sided")]
    TwoSided,
    #[serde(alias = "one-sided")]
    OneSided,
}

impl TesterKind {
    pub const ALL: [TesterKind; 5] = [
        TesterKind::Exact,
        TesterKind::Trivial,
        TesterKind::Det,
        TesterKind::TwoSided,
        TesterKind::OneSided,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TesterKind::Exact => "exact",
            TesterKind::Trivial => "trivial",
            TesterKind::Det => "det",
            TesterKind::TwoSided => "two_sided",
            TesterKind::OneSided => "one_sided",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, TesterKind::TwoSided | TesterKind::OneSided)
    }

    pub fn uses_eps(self) -> bool {
        self == TesterKind::TwoSided
    }
}

impl fmt::Display for TesterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TesterKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.replace('-', "_");
        match Self::ALL.iter().find(|k| k.name() == normalized) {
            Some(&k) => Ok(k),
            None => bail!("unknown tester {s:?}; expected one of exact, trivial, det, two_sided, one_sided"),
        }
    }
}

/// Builds testers of one kind for one language and window size.
pub struct TesterFactory {
    kind: TesterKind,
    language: Language,
    analyzed: Option<Arc<AnalyzedRdfa>>,
    n: usize,
    eps: f64,
}

impl TesterFactory {
    pub fn new(kind: TesterKind, language: Language, n: usize, eps: f64) -> Result<Self> {
        let analyzed = match kind {
            TesterKind::Det | TesterKind::TwoSided => {
                Some(Arc::new(AnalyzedRdfa::new(language.rdfa())?))
            }
            _ => None,
        };
        if kind == TesterKind::Trivial && !is_trivial(language.dfa())? {
            bail!("the trivial tester needs a trivial language");
        }
        if kind.uses_eps() && !(eps > 0.0 && eps <= 1.0) {
            bail!("epsilon must lie in (0, 1], got {eps}");
        }
        let factory = Self { kind, language, analyzed, n, eps };
        factory.build(0)?;
        Ok(factory)
    }

    pub fn kind(&self) -> TesterKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn language(&self) -> &Language {
        &self.language
    }

    pub fn build(&self, seed: u64) -> Result<Box<dyn Tester>> {
        let n = self.n;
        Ok(match self.kind {
            TesterKind::Exact => Box::new(ExactTester::from_dfa(self.language.dfa(), n)),
            TesterKind::Trivial => Box::new(TrivialTester::for_dfa(self.language.dfa(), n)?),
            TesterKind::Det => {
                Box::new(DeterministicTester::new(self.analyzed.clone().expect("analyzed"), n))
            }
            TesterKind::TwoSided => Box::new(TwoSidedTester::new(
                self.analyzed.clone().expect("analyzed"),
                n,
                self.eps,
                seed,
            )?),
            TesterKind::OneSided => one_sided_tester(self.language.dfa(), n, ONE_SIDED_BETA, seed)?,
        })
    }
}

/// Outcome of running independent tester instances over one stream.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarlo {
    pub trials: u64,
    pub accepts: u64,
    /// Maximum state_bits seen at any step of any trial.
    pub max_state_bits: u64,
}

impl MonteCarlo {
    pub fn frequency(&self) -> f64 {
        self.accepts as f64 / self.trials as f64
    }
}

/// Runs `trials` testers seeded by `derive_seed(&[master_seed, trial])` and
/// counts acceptances at the end of the stream. Deterministic kinds run once
/// and the result is replicated.
pub fn monte_carlo(factory: &TesterFactory, stream: &[Symbol], trials: u64, master_seed: u64) -> Result<MonteCarlo> {
    if trials == 0 {
        bail!("trials must be positive");
    }
    let runs = if factory.kind().is_randomized() { trials } else { 1 };
    let results: Vec<(bool, u64)> = (0..runs)
        .into_par_iter()
        .map(|trial| {
            let mut tester = factory.build(derive_seed(&[master_seed, trial]))?;
            let mut bits = tester.state_bits();
            for &a in stream {
                tester.feed(a);
                bits = bits.max(tester.state_bits());
            }
            Ok((tester.decide().is_accept(), bits))
        })
        .collect::<Result<_>>()?;
    let accepts: u64 = results.iter().filter(|r| r.0).count() as u64;
    Ok(MonteCarlo {
        trials,
        accepts: accepts * (trials / runs),
        max_state_bits: results.iter().map(|r| r.1).max().unwrap_or(0),
    })
}

/// Decision after every stream position, starting with the initial window.
pub fn decision_trace(tester: &mut dyn Tester, stream: &[Symbol]) -> Vec<Decision> {
    let mut trace = vec![tester.decide()];
    for &a in stream {
        tester.feed(a);
        trace.push(tester.decide());
    }
    trace
}

#[cfg(test)]
mod tests {
    use super::*;
    use regwin::automata::Alphabet;

    fn lang(p: &str) -> Language {
        Language::from_regex(p, &Alphabet::new("ab".chars()).unwrap()).unwrap()
    }

    #[test]
    fn kinds_parse_both_spellings() {
        assert_eq!("two-sided".parse::<TesterKind>().unwrap(), TesterKind::TwoSided);
        assert_eq!("one_sided".parse::<TesterKind>().unwrap(), TesterKind::OneSided);
        assert!("quantum".parse::<TesterKind>().is_err());
    }

    #[test]
    fn deterministic_frequencies_are_zero_or_one() {
        let sigma = Alphabet::new("ab".chars()).unwrap();
        let f = TesterFactory::new(TesterKind::Det, lang("a*"), 8, 0.5).unwrap();
        let member = monte_carlo(&f, &sigma.encode("baaaaaaaa").unwrap(), 10, 1).unwrap();
        assert_eq!(member.frequency(), 1.0);
        let far = monte_carlo(&f, &sigma.encode("bbbbbbbb").unwrap(), 10, 1).unwrap();
        assert_eq!(far.frequency(), 0.0);
    }

    #[test]
    fn one_sided_members_always_accepted() {
        let sigma = Alphabet::new("ab".chars()).unwrap();
        let f = TesterFactory::new(TesterKind::OneSided, lang("ba*"), 32, 0.5).unwrap();
        let stream = sigma.encode(&format!("ab{}", "b".to_string() + &"a".repeat(31))).unwrap();
        assert_eq!(monte_carlo(&f, &stream, 50, 3).unwrap().frequency(), 1.0);
    }

    #[test]
    fn trivial_kind_requires_trivial_language() {
        assert!(TesterFactory::new(TesterKind::Trivial, lang("a*"), 8, 0.5).is_err());
        assert!(TesterFactory::new(TesterKind::Trivial, lang("(a|b)*a"), 8, 0.5).is_ok());
        assert!(TesterFactory::new(TesterKind::OneSided, lang("a*"), 8, 0.5).is_err());
    }

    #[test]
    fn traces_start_with_initial_window() {
        let sigma = Alphabet::new("ab".chars()).unwrap();
        let f = TesterFactory::new(TesterKind::Exact, lang("a*"), 2, 0.5).unwrap();
        let mut t = f.build(0).unwrap();
        let trace = decision_trace(t.as_mut(), &sigma.encode("baa").unwrap());
        let accepts: Vec<bool> = trace.iter().map(|d| d.is_accept()).collect();
        assert_eq!(accepts, vec![true, false, false, true]);
    }
}
