use serde::Serialize;

use crate::automata::{Rdfa, StateId};
use crate::error::{Error, Result};

/// Strongly connected components of a transition graph.
///
/// Components are numbered topologically: if component `d` is reachable from
/// component `c` then `c <= d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SccDecomposition {
    scc_id: Vec<usize>,
    components: Vec<Vec<StateId>>,
    transient: Vec<bool>,
    /// `reach[c][d]`: component `d` is reachable from `c` (reflexive).
    reach: Vec<Vec<bool>>,
}

impl SccDecomposition {
    /// Decomposes the graph with edges `q -> delta[q][a]`.
    pub fn of_table(delta: &[Vec<StateId>]) -> Self {
        let n = delta.len();
        let raw = tarjan(delta);
        // Tarjan emits components sinks first.
        let count = raw.len();
        let mut scc_id = vec![0; n];
        let mut components: Vec<Vec<StateId>> = Vec::with_capacity(count);
        for (k, mut comp) in raw.into_iter().rev().enumerate() {
            comp.sort_unstable();
            for &q in &comp {
                scc_id[q] = k;
            }
            components.push(comp);
        }
        let transient = components
            .iter()
            .map(|comp| comp.len() == 1 && !delta[comp[0]].contains(&comp[0]))
            .collect();
        let mut reach = vec![vec![false; count]; count];
        for c in (0..count).rev() {
            reach[c][c] = true;
            for &q in &components[c] {
                for &r in &delta[q] {
                    let d = scc_id[r];
                    if d != c {
                        for e in 0..count {
                            if reach[d][e] {
                                reach[c][e] = true;
                            }
                        }
                    }
                }
            }
        }
        Self { scc_id, components, transient, reach }
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, q: StateId) -> usize {
        self.scc_id[q]
    }

    pub fn component(&self, c: usize) -> &[StateId] {
        &self.components[c]
    }

    pub fn components(&self) -> &[Vec<StateId>] {
        &self.components
    }

    pub fn is_transient(&self, c: usize) -> bool {
        self.transient[c]
    }

    pub fn is_transient_state(&self, q: StateId) -> bool {
        self.transient[self.scc_id[q]]
    }

    pub fn same_component(&self, p: StateId, q: StateId) -> bool {
        self.scc_id[p] == self.scc_id[q]
    }

    /// Component `d` can be reached from component `c` (reflexive).
    pub fn reaches(&self, c: usize, d: usize) -> bool {
        self.reach[c][d]
    }

    /// Strict order: `c` before `d` when `d` is reachable from `c` and `c != d`.
    pub fn precedes(&self, c: usize, d: usize) -> bool {
        c != d && self.reach[c][d]
    }
}

/// Iterative Tarjan; returns components in reverse topological order.
fn tarjan(delta: &[Vec<StateId>]) -> Vec<Vec<StateId>> {
    let n = delta.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next_index = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut frames: Vec<(StateId, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut edge)) = frames.last_mut() {
            if *edge < delta[v].len() {
                let w = delta[v][*edge];
                *edge += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                out.push(comp);
            }
        }
    }
    out
}

pub fn scc_decompose(rdfa: &Rdfa) -> SccDecomposition {
    SccDecomposition::of_table(rdfa.transitions())
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Period of one component together with BFS depths of its states.
/// `None` is the period of a transient component.
fn component_period(
    delta: &[Vec<StateId>],
    scc: &SccDecomposition,
    c: usize,
) -> (Option<usize>, Vec<(StateId, usize)>) {
    let comp = scc.component(c);
    if scc.is_transient(c) {
        return (None, vec![(comp[0], 0)]);
    }
    let mut depth: std::collections::HashMap<StateId, usize> = [(comp[0], 0)].into();
    let mut queue = std::collections::VecDeque::from([comp[0]]);
    while let Some(u) = queue.pop_front() {
        for &v in &delta[u] {
            if scc.component_of(v) == c && !depth.contains_key(&v) {
                depth.insert(v, depth[&u] + 1);
                queue.push_back(v);
            }
        }
    }
    let mut g = 0;
    for &u in comp {
        for &v in &delta[u] {
            if scc.component_of(v) == c {
                g = gcd(g, (depth[&u] + 1).abs_diff(depth[&v]));
            }
        }
    }
    (Some(g), comp.iter().map(|&q| (q, depth[&q])).collect())
}

/// Period `g(C)` of a component: `None` for transient components.
pub fn scc_period(c: usize, scc: &SccDecomposition, rdfa: &Rdfa) -> Option<usize> {
    component_period(rdfa.transitions(), scc, c).0
}

/// Periods of all components and the residue class of every state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodInfo {
    periods: Vec<Option<usize>>,
    g: usize,
    class_of: Vec<usize>,
    scc_of: Vec<usize>,
}

impl PeriodInfo {
    pub fn of_table(delta: &[Vec<StateId>], scc: &SccDecomposition) -> Self {
        let mut periods = Vec::with_capacity(scc.num_components());
        let mut class_of = vec![0; delta.len()];
        for c in 0..scc.num_components() {
            let (period, depths) = component_period(delta, scc, c);
            for (q, d) in depths {
                class_of[q] = period.map_or(0, |p| d % p);
            }
            periods.push(period);
        }
        let g = periods.iter().flatten().fold(1, |acc, &p| lcm(acc, p));
        let scc_of = (0..delta.len()).map(|q| scc.component_of(q)).collect();
        Self { periods, g, class_of, scc_of }
    }

    pub fn of(rdfa: &Rdfa, scc: &SccDecomposition) -> Self {
        Self::of_table(rdfa.transitions(), scc)
    }

    /// Per-component periods; `None` marks a transient component.
    pub fn periods(&self) -> &[Option<usize>] {
        &self.periods
    }

    pub fn period(&self, c: usize) -> Option<usize> {
        self.periods[c]
    }

    /// Least common multiple of the finite periods (1 if there are none).
    pub fn g(&self) -> usize {
        self.g
    }

    /// Every non-transient component has period exactly `g`.
    pub fn is_uniform(&self) -> bool {
        self.periods.iter().flatten().all(|&p| p == self.g)
    }

    pub fn class_of(&self, q: StateId) -> usize {
        self.class_of[q]
    }

    /// Residue modulo `g(C)` of every path from `p` to `q` inside their
    /// common non-transient component `C`.
    pub fn shift(&self, p: StateId, q: StateId) -> Result<usize> {
        let c = self.scc_of[p];
        match self.periods[c] {
            Some(g) if self.scc_of[q] == c => {
                Ok((self.class_of[q] + g - self.class_of[p]) % g)
            }
            _ => Err(Error::NotCoLocated { p, q }),
        }
    }
}

pub fn shift(p: StateId, q: StateId, info: &PeriodInfo) -> Result<usize> {
    info.shift(p, q)
}
