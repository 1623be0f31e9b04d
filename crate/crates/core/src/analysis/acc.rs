use std::collections::HashMap;

use super::eps::{detect_cycle, vector_cap, EventuallyPeriodicSet};
use super::scc::{PeriodInfo, SccDecomposition};
use crate::automata::{Rdfa, StateId};
use crate::error::{Error, Result};

/// Makes every non-transient component have the same period `g`.
///
/// `g` is the least common multiple of the component periods. When the
/// periods already agree the trimmed input is returned; otherwise the result
/// is the reachable part of `Q × Z_g`, where the counter advances on
/// transitions inside a component and resets on transitions leaving it.
pub fn uniformize_period(rdfa: &Rdfa) -> Result<(Rdfa, usize)> {
    let rdfa = rdfa.trim_reachable();
    let scc = SccDecomposition::of_table(rdfa.transitions());
    let info = PeriodInfo::of(&rdfa, &scc);
    let g = info.g();
    if info.is_uniform() {
        return Ok((rdfa, g));
    }
    let k = rdfa.alphabet().len();
    let start = (rdfa.initial(), 0usize);
    let mut ids: HashMap<(StateId, usize), StateId> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut delta = Vec::new();
    let mut head = 0;
    while head < states.len() {
        let (q, c) = states[head];
        head += 1;
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let r = rdfa.step(a, q);
            let counter = if scc.same_component(q, r) { (c + 1) % g } else { 0 };
            let next = (r, counter);
            let id = *ids.entry(next).or_insert_with(|| {
                states.push(next);
                states.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
    }
    let finals = states.iter().map(|&(q, _)| rdfa.is_final(q)).collect();
    Ok((Rdfa::new(rdfa.alphabet().clone(), delta, 0, finals)?, g))
}

/// Minimal per-state acceptance sets together with the global threshold.
#[derive(Clone, Debug)]
pub struct AcceptanceSets {
    /// Canonical (minimal threshold and period) description of `Acc(q)`.
    pub acc: Vec<EventuallyPeriodicSet>,
    /// Least `t` for which both periodicity conditions hold from `t` on.
    pub t: usize,
}

/// Sets of lengths `x` such that some word of length `x` leads from `q` to a
/// final state, for a machine with uniform period.
pub fn acceptance_sets(rdfa: &Rdfa) -> Result<AcceptanceSets> {
    let scc = SccDecomposition::of_table(rdfa.transitions());
    let info = PeriodInfo::of(rdfa, &scc);
    if !info.is_uniform() {
        return Err(Error::Parameter("acceptance sets need a uniform period".into()));
    }
    let acc = raw_acceptance_sets(rdfa)?;
    let t = global_threshold(&acc, &scc, &info)?;
    Ok(AcceptanceSets { acc, t })
}

/// Acceptance sets and the least threshold satisfying both periodicity
/// conditions with respect to the lcm of the component periods.
pub(crate) fn acceptance_with_threshold(
    rdfa: &Rdfa,
) -> Result<(Vec<EventuallyPeriodicSet>, usize, SccDecomposition, PeriodInfo)> {
    let scc = SccDecomposition::of_table(rdfa.transitions());
    let info = PeriodInfo::of(rdfa, &scc);
    let acc = raw_acceptance_sets(rdfa)?;
    let t = global_threshold(&acc, &scc, &info)?;
    Ok((acc, t, scc, info))
}

pub(crate) fn raw_acceptance_sets(rdfa: &Rdfa) -> Result<Vec<EventuallyPeriodicSet>> {
    let n = rdfa.num_states();
    let step = |v: &Vec<bool>| -> Vec<bool> {
        (0..n).map(|q| rdfa.transitions()[q].iter().any(|&r| v[r])).collect()
    };
    let (seq, mu, lambda) =
        detect_cycle(rdfa.finals().to_vec(), step, vector_cap(n), "computing acceptance sets")?;
    Ok((0..n)
        .map(|q| {
            EventuallyPeriodicSet::from_fn(mu, lambda, |x| {
                let idx = if x < mu { x } else { mu + (x - mu) % lambda };
                seq[idx][q]
            })
            .canonical()
        })
        .collect())
}

fn global_threshold(
    acc: &[EventuallyPeriodicSet],
    scc: &SccDecomposition,
    info: &PeriodInfo,
) -> Result<usize> {
    let g = info.g();
    let mut pairs = Vec::new();
    for c in 0..scc.num_components() {
        if scc.is_transient(c) {
            continue;
        }
        for &p in scc.component(c) {
            for &q in scc.component(c) {
                if p != q {
                    pairs.push((p, q, info.shift(p, q)?));
                }
            }
        }
    }
    let shifted = |set: &EventuallyPeriodicSet, x: usize, s: usize| x >= s && set.contains(x - s);
    let holds = |x: usize| {
        acc.iter().all(|a| a.contains(x) == shifted(a, x, g))
            && pairs.iter().all(|&(p, q, s)| acc[p].contains(x) == shifted(&acc[q], x, s))
    };
    let top = acc.iter().map(EventuallyPeriodicSet::threshold).max().unwrap_or(0) + g;
    if !(top..top + g).all(holds) {
        return Err(Error::Parameter(
            "acceptance sets are not periodic with the uniform period".into(),
        ));
    }
    let mut t = top;
    while t > 0 && holds(t - 1) {
        t -= 1;
    }
    Ok(t)
}

/// An rDFA with uniform period and all data the testers compile against.
#[derive(Clone, Debug)]
pub struct AnalyzedRdfa {
    rdfa: Rdfa,
    g: usize,
    scc: SccDecomposition,
    periods: PeriodInfo,
    acc: Vec<EventuallyPeriodicSet>,
    t: usize,
    acc_mod: Vec<Vec<bool>>,
}

impl AnalyzedRdfa {
    /// Trims and uniformizes `rdfa`, then computes acceptance sets.
    pub fn new(rdfa: &Rdfa) -> Result<Self> {
        let (rdfa, g) = uniformize_period(rdfa)?;
        let scc = SccDecomposition::of_table(rdfa.transitions());
        let periods = PeriodInfo::of(&rdfa, &scc);
        debug_assert!(periods.is_uniform() && periods.g() == g);
        let AcceptanceSets { acc, t } = acceptance_sets(&rdfa)?;
        let acc: Vec<_> = acc.iter().map(|a| a.with_threshold(t)).collect();
        let acc_mod = acc
            .iter()
            .map(|a| (0..g).map(|r| a.contains(t + (r + g - t % g) % g)).collect())
            .collect();
        Ok(Self { rdfa, g, scc, periods, acc, t, acc_mod })
    }

    pub fn rdfa(&self) -> &Rdfa {
        &self.rdfa
    }

    pub fn num_states(&self) -> usize {
        self.rdfa.num_states()
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn scc(&self) -> &SccDecomposition {
        &self.scc
    }

    pub fn periods(&self) -> &PeriodInfo {
        &self.periods
    }

    /// `Acc(q)`, described with the global threshold.
    pub fn acc(&self, q: StateId) -> &EventuallyPeriodicSet {
        &self.acc[q]
    }

    pub fn acc_sets(&self) -> &[EventuallyPeriodicSet] {
        &self.acc
    }

    /// Residues modulo `g` of the members of `Acc(q)` that are at least `t`.
    pub fn acc_mod(&self, q: StateId) -> &[bool] {
        &self.acc_mod[q]
    }

    pub fn shift(&self, p: StateId, q: StateId) -> Result<usize> {
        self.periods.shift(p, q)
    }

    pub fn same_component(&self, p: StateId, q: StateId) -> bool {
        self.scc.same_component(p, q)
    }
}
