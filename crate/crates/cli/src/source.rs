use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

use regwin::automata::{Alphabet, AutomatonFile, Language};

/// Where a language comes from: a regex over an explicit alphabet or an
/// automaton JSON file.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum LanguageSource {
    Regex {
        regex: String,
        #[serde(default = "default_alphabet")]
        alphabet: String,
        #[serde(default)]
        pad: Option<char>,
    },
    Automaton {
        automaton: PathBuf,
    },
}

pub fn default_alphabet() -> String {
    "ab".to_string()
}

impl LanguageSource {
    /// Loads the language; relative automaton paths resolve against `base`.
    pub fn load(&self, base: Option<&Path>) -> Result<Language> {
        match self {
            LanguageSource::Regex { regex, alphabet, pad } => {
                let sigma = Alphabet::from_str_symbols(alphabet, *pad)?;
                Ok(Language::from_regex(regex, &sigma)?)
            }
            LanguageSource::Automaton { automaton } => {
                let path = match base {
                    Some(dir) if automaton.is_relative() => dir.join(automaton),
                    _ => automaton.clone(),
                };
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let loaded = AutomatonFile::from_json(&text)
                    .and_then(|f| f.load())
                    .with_context(|| format!("loading {}", path.display()))?;
                Ok(Language::from_loaded(loaded)?)
            }
        }
    }
}
