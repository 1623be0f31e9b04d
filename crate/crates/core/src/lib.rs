//! Property testing of regular languages over a sliding window.
//!
//! The crate provides automata utilities, structural analysis of
//! right-to-left automata, streaming testers and brute-force reference
//! oracles.

pub mod analysis;
pub mod automata;
pub mod error;
pub mod oracle;
pub mod testers;

pub use error::{Error, Result};
