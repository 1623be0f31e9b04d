use std::collections::HashSet;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use regwin::automata::Language;
use regwin::oracle::{active_window, distance_to_language};

use crate::sim::{monte_carlo, TesterFactory, TesterKind};
use crate::source::LanguageSource;
use crate::stream::StreamSpec;

#[derive(Clone, Debug, Deserialize)]
pub struct LanguageEntry {
    pub id: String,
    #[serde(flatten)]
    pub source: LanguageSource,
}

#[derive(Clone, Debug, Deserialize)]
pub struct StreamEntry {
    pub id: String,
    #[serde(flatten)]
    pub spec: StreamSpec,
}

fn default_trials() -> u64 {
    100
}

fn default_eps() -> Vec<f64> {
    vec![0.5]
}

/// Experiment description; see the README for the schema.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: u64,
    pub languages: Vec<LanguageEntry>,
    pub testers: Vec<String>,
    pub n: Vec<usize>,
    /// Only used by the two-sided tester.
    #[serde(default = "default_eps")]
    pub eps: Vec<f64>,
    pub streams: Vec<StreamEntry>,
    /// Adds wall-clock seconds per row; off by default so reports are
    /// byte-for-byte reproducible.
    #[serde(default)]
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub language: String,
    pub stream: String,
    pub tester: String,
    pub n: usize,
    pub eps: Option<f64>,
    pub trials: u64,
    pub accept_frequency: f64,
    /// Hamming distance of the final window to the language slice, or `inf`.
    pub oracle_distance: String,
    /// Maximum state_bits over the run.
    pub state_bits: u64,
    pub wall_time_s: Option<f64>,
}

pub const REPORT_COLUMNS: [&str; 10] = [
    "language",
    "stream",
    "tester",
    "n",
    "eps",
    "trials",
    "accept_frequency",
    "oracle_distance",
    "state_bits",
    "wall_time_s",
];

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(REPORT_COLUMNS)?;
        for row in &self.rows {
            w.serialize(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// A validated experiment: languages loaded, tester names parsed, streams
/// checked against every language's alphabet.
pub struct Experiment {
    config: ExperimentConfig,
    languages: Vec<Language>,
    kinds: Vec<TesterKind>,
}

impl Experiment {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text, path.parent())
    }

    /// Relative automaton paths resolve against `base`.
    pub fn from_json(text: &str, base: Option<&Path>) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text).context("parsing config")?;
        Self::new(config, base)
    }

    pub fn new(config: ExperimentConfig, base: Option<&Path>) -> Result<Self> {
        if config.trials == 0 {
            bail!("trials: must be positive");
        }
        let kinds = config
            .testers
            .iter()
            .enumerate()
            .map(|(i, t)| t.parse::<TesterKind>().map_err(|e| anyhow!("testers[{i}]: {e}")))
            .collect::<Result<Vec<_>>>()?;
        for (i, &n) in config.n.iter().enumerate() {
            if n == 0 {
                bail!("n[{i}]: window size must be positive");
            }
        }
        for (i, &e) in config.eps.iter().enumerate() {
            if !(e > 0.0 && e <= 1.0) {
                bail!("eps[{i}]: must lie in (0, 1], got {e}");
            }
        }
        unique_ids(config.languages.iter().map(|l| l.id.as_str()), "languages")?;
        unique_ids(config.streams.iter().map(|s| s.id.as_str()), "streams")?;
        let languages = config
            .languages
            .iter()
            .enumerate()
            .map(|(i, l)| l.source.load(base).map_err(|e| anyhow!("languages[{i}]: {e:#}")))
            .collect::<Result<Vec<_>>>()?;
        for (j, s) in config.streams.iter().enumerate() {
            for (i, lang) in languages.iter().enumerate() {
                s.spec
                    .validate(lang.alphabet())
                    .map_err(|e| anyhow!("streams[{j}] with languages[{i}]: {e:#}"))?;
            }
        }
        Ok(Self { config, languages, kinds })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    /// Runs the cross product languages × testers × n × streams (× ε for the
    /// two-sided tester). Rows come out sorted.
    pub fn run(&self) -> Result<ExperimentReport> {
        let c = &self.config;
        let mut jobs = Vec::new();
        for li in 0..self.languages.len() {
            for (ti, &kind) in self.kinds.iter().enumerate() {
                let eps: Vec<Option<f64>> =
                    if kind.uses_eps() { c.eps.iter().copied().map(Some).collect() } else { vec![None] };
                for &n in &c.n {
                    for &e in &eps {
                        for si in 0..c.streams.len() {
                            jobs.push((li, ti, kind, n, e, si));
                        }
                    }
                }
            }
        }
        let mut rows = jobs
            .par_iter()
            .map(|&(li, ti, kind, n, eps, si)| {
                self.row(li, kind, n, eps, si).map_err(|e| {
                    anyhow!("languages[{li}] with testers[{ti}] at n = {n}: {e:#}")
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.sort_by(|a, b| {
            (&a.language, &a.stream, &a.tester, a.n)
                .cmp(&(&b.language, &b.stream, &b.tester, b.n))
                .then(a.eps.unwrap_or(0.0).total_cmp(&b.eps.unwrap_or(0.0)))
        });
        Ok(ExperimentReport { rows })
    }

    fn row(&self, li: usize, kind: TesterKind, n: usize, eps: Option<f64>, si: usize) -> Result<ReportRow> {
        let c = &self.config;
        let start = Instant::now();
        let language = &self.languages[li];
        let stream = c.streams[si].spec.generate(language.alphabet())?;
        let factory = TesterFactory::new(kind, language.clone(), n, eps.unwrap_or(0.5))?;
        let seed = regwin::testers::derive_seed(&[c.seed, li as u64, si as u64, n as u64]);
        let mc = monte_carlo(&factory, &stream, c.trials, seed)?;
        let window = active_window(&stream, n, language.alphabet().pad());
        let distance = distance_to_language(&window, language.dfa());
        Ok(ReportRow {
            language: c.languages[li].id.clone(),
            stream: c.streams[si].id.clone(),
            tester: kind.name().to_string(),
            n,
            eps,
            trials: mc.trials,
            accept_frequency: mc.frequency(),
            oracle_distance: distance.to_string(),
            state_bits: mc.max_state_bits,
            wall_time_s: c.timing.then(|| start.elapsed().as_secs_f64()),
        })
    }
}

fn unique_ids<'a>(ids: impl Iterator<Item = &'a str>, field: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, id) in ids.enumerate() {
        if !seen.insert(id) {
            bail!("{field}[{i}].id: duplicate id {id:?}");
        }
    }
    Ok(())
}
