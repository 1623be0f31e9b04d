use std::collections::HashMap;

use crate::error::{Error, Result};

/// Dense symbol code, an index into [`Alphabet::symbols`].
pub type Symbol = usize;

/// Ordered set of single-character symbols with a designated pad symbol.
///
/// The pad fills the initial window: before any input arrives a tester of
/// window size `n` sees `pad^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, Symbol>,
    pad: Symbol,
}

impl Alphabet {
    /// Builds an alphabet whose pad is the smallest symbol.
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        Self::with_pad(symbols, None)
    }

    pub fn with_pad<I: IntoIterator<Item = char>>(symbols: I, pad: Option<char>) -> Result<Self> {
        let mut symbols: Vec<char> = symbols.into_iter().collect();
        symbols.sort_unstable();
        for pair in symbols.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateSymbol(pair[0]));
            }
        }
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let index: HashMap<char, Symbol> =
            symbols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let pad = match pad {
            None => 0,
            Some(c) => *index.get(&c).ok_or(Error::PadNotInAlphabet(c))?,
        };
        Ok(Self { symbols, index, pad })
    }

    /// Parses a string of symbol characters, e.g. `"ab"`.
    pub fn from_str_symbols(symbols: &str, pad: Option<char>) -> Result<Self> {
        Self::with_pad(symbols.chars(), pad)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn pad(&self) -> Symbol {
        self.pad
    }

    pub fn pad_char(&self) -> char {
        self.symbols[self.pad]
    }

    pub fn chars(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbols(&self) -> std::ops::Range<Symbol> {
        0..self.symbols.len()
    }

    pub fn code(&self, c: char) -> Result<Symbol> {
        self.index.get(&c).copied().ok_or(Error::UnknownSymbol(c))
    }

    pub fn char_of(&self, s: Symbol) -> char {
        self.symbols[s]
    }

    pub fn encode(&self, word: &str) -> Result<Vec<Symbol>> {
        word.chars().map(|c| self.code(c)).collect()
    }

    pub fn decode(&self, word: &[Symbol]) -> String {
        word.iter().map(|&s| self.symbols[s]).collect()
    }

    /// Same symbol set, ignoring the pad choice.
    pub fn same_symbols(&self, other: &Alphabet) -> bool {
        self.symbols == other.symbols
    }

    /// Bits needed to store one symbol.
    pub fn symbol_bits(&self) -> u64 {
        ceil_log2(self.symbols.len() as u64).max(1)
    }
}

/// `⌈log₂ x⌉`, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - u64::from((x - 1).leading_zeros())
    }
}
