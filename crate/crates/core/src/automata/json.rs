//! On-disk automaton format.
//!
//! ```json
//! {"alphabet": ["a", "b"], "pad": "a", "states": 2, "initial": 0,
//!  "finals": [0], "direction": "left",
//!  "transitions": [{"from": 0, "symbol": "a", "to": 0}]}
//! ```
//!
//! `direction: "right"` marks a right-to-left automaton whose transition
//! `{from: p, symbol: a, to: q}` means `δ(a, p) = q`. Missing transitions are
//! routed to a fresh sink state.

use serde::{Deserialize, Serialize};

use super::{Alphabet, Dfa, Rdfa, StateId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionEntry {
    pub from: StateId,
    pub symbol: String,
    pub to: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pad: Option<String>,
    pub states: usize,
    pub initial: StateId,
    pub finals: Vec<StateId>,
    pub direction: Direction,
    pub transitions: Vec<TransitionEntry>,
}

/// Either reading direction, as loaded from a file.
#[derive(Clone, Debug)]
pub enum LoadedAutomaton {
    Left(Dfa),
    Right(Rdfa),
}

fn single_char(s: &str) -> Result<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::Format(format!("symbol {s:?} must be a single character"))),
    }
}

impl AutomatonFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(&self) -> Result<LoadedAutomaton> {
        let symbols = self.alphabet.iter().map(|s| single_char(s)).collect::<Result<Vec<_>>>()?;
        let pad = self.pad.as_deref().map(single_char).transpose()?;
        let alphabet = Alphabet::with_pad(symbols, pad)?;
        let n = self.states;
        if n == 0 {
            return Err(Error::Format("automaton needs at least one state".into()));
        }
        let mut delta: Vec<Vec<Option<StateId>>> = vec![vec![None; alphabet.len()]; n];
        for t in &self.transitions {
            for q in [t.from, t.to] {
                if q >= n {
                    return Err(Error::InvalidState { state: q, count: n });
                }
            }
            let a = alphabet.code(single_char(&t.symbol)?)?;
            match delta[t.from][a] {
                Some(prev) if prev != t.to => {
                    return Err(Error::Format(format!(
                        "state {} has two transitions on '{}'",
                        t.from, t.symbol
                    )))
                }
                _ => delta[t.from][a] = Some(t.to),
            }
        }
        let needs_sink = delta.iter().flatten().any(Option::is_none);
        let sink = n;
        let mut table: Vec<Vec<StateId>> =
            delta.into_iter().map(|row| row.into_iter().map(|t| t.unwrap_or(sink)).collect()).collect();
        if needs_sink {
            table.push(vec![sink; alphabet.len()]);
        }
        let mut finals = vec![false; table.len()];
        for &f in &self.finals {
            if f >= n {
                return Err(Error::InvalidState { state: f, count: n });
            }
            finals[f] = true;
        }
        Ok(match self.direction {
            Direction::Left => LoadedAutomaton::Left(Dfa::new(alphabet, table, self.initial, finals)?),
            Direction::Right => {
                LoadedAutomaton::Right(Rdfa::new(alphabet, table, self.initial, finals)?)
            }
        })
    }

    fn from_table(
        alphabet: &Alphabet,
        table: &[Vec<StateId>],
        initial: StateId,
        finals: &[bool],
        direction: Direction,
    ) -> Self {
        let transitions = table
            .iter()
            .enumerate()
            .flat_map(|(from, row)| {
                row.iter().enumerate().map(move |(a, &to)| TransitionEntry {
                    from,
                    symbol: alphabet.char_of(a).to_string(),
                    to,
                })
            })
            .collect();
        AutomatonFile {
            alphabet: alphabet.chars().iter().map(|c| c.to_string()).collect(),
            pad: Some(alphabet.pad_char().to_string()),
            states: table.len(),
            initial,
            finals: finals.iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q).collect(),
            direction,
            transitions,
        }
    }

    pub fn from_dfa(dfa: &Dfa) -> Self {
        Self::from_table(dfa.alphabet(), dfa.transitions(), dfa.initial(), dfa.finals(), Direction::Left)
    }

    pub fn from_rdfa(rdfa: &Rdfa) -> Self {
        Self::from_table(
            rdfa.alphabet(),
            rdfa.transitions(),
            rdfa.initial(),
            rdfa.finals(),
            Direction::Right,
        )
    }
}
