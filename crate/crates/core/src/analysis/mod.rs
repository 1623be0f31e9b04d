//! Structural analysis of automata: components, periods, acceptance sets and
//! the language classifiers built on them.

mod acc;
mod classify;
mod eps;
mod scc;

pub use acc::{acceptance_sets, uniformize_period, AcceptanceSets, AnalyzedRdfa};
pub use classify::{
    cut_language, find_excluded_factor, is_length_language, is_suffix_free, is_trivial,
    length_set, one_sided_class, split_finals, triviality_witness, ExcludedFactor, OneSidedClass,
    TrivialityWitness,
};
pub use eps::EventuallyPeriodicSet;

pub(crate) use acc::acceptance_with_threshold;
pub use scc::{gcd, lcm, scc_decompose, scc_period, shift, PeriodInfo, SccDecomposition};

