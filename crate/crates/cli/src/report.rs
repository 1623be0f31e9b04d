use anyhow::Result;
use serde::Serialize;

use regwin::analysis::{
    find_excluded_factor, is_suffix_free, one_sided_class, triviality_witness, AnalyzedRdfa,
    OneSidedClass, TrivialityWitness,
};
use regwin::automata::Language;

/// Longest factor tried when searching for an excluded factor.
pub const EXCLUDED_FACTOR_MAX_LEN: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct ExcludedFactorReport {
    pub offset: usize,
    pub step: usize,
    pub factor: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub trivial: bool,
    pub triviality_witness: Option<TrivialityWitness>,
    pub suffix_free: bool,
    pub one_sided_class: OneSidedClass,
    pub excluded_factor: Option<ExcludedFactorReport>,
}

pub fn classify(language: &Language) -> Result<Classification> {
    let dfa = language.dfa();
    let witness = triviality_witness(dfa)?;
    let excluded = find_excluded_factor(dfa, EXCLUDED_FACTOR_MAX_LEN)?.map(|f| ExcludedFactorReport {
        offset: f.offset,
        step: f.step,
        factor: language.alphabet().decode(&f.factor),
    });
    Ok(Classification {
        trivial: witness.is_some(),
        triviality_witness: witness,
        suffix_free: is_suffix_free(language.rdfa()),
        one_sided_class: one_sided_class(dfa)?,
        excluded_factor: excluded,
    })
}

/// Membership bits rendered as a string of `0` and `1`.
fn bits(values: &[bool]) -> String {
    values.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AccReport {
    pub state: usize,
    pub is_final: bool,
    pub threshold: usize,
    pub period: usize,
    pub prefix: String,
    pub residues: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub component: usize,
    pub states: Vec<usize>,
    pub transient: bool,
    pub period: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub alphabet: String,
    pub pad: char,
    pub states: usize,
    pub initial: usize,
    pub g: usize,
    pub t: usize,
    pub acc: Vec<AccReport>,
    pub scc: Vec<ComponentReport>,
    pub classification: Classification,
}

/// Report on the period-uniform rDFA used by the testers.
pub fn analyze(language: &Language) -> Result<Analysis> {
    let analyzed = AnalyzedRdfa::new(language.rdfa())?;
    let rdfa = analyzed.rdfa();
    let scc = analyzed.scc();
    let acc = (0..rdfa.num_states())
        .map(|q| {
            let set = analyzed.acc(q);
            AccReport {
                state: q,
                is_final: rdfa.is_final(q),
                threshold: set.threshold(),
                period: set.period(),
                prefix: bits(set.prefix()),
                residues: bits(set.residues()),
            }
        })
        .collect();
    let components = (0..scc.num_components())
        .map(|c| ComponentReport {
            component: c,
            states: scc.component(c).to_vec(),
            transient: scc.is_transient(c),
            period: analyzed.periods().period(c),
        })
        .collect();
    Ok(Analysis {
        alphabet: language.alphabet().chars().iter().collect(),
        pad: language.alphabet().pad_char(),
        states: rdfa.num_states(),
        initial: rdfa.initial(),
        g: analyzed.g(),
        t: analyzed.t(),
        acc,
        scc: components,
        classification: classify(language)?,
    })
}
