use super::{Decision, Tester};
use crate::automata::Symbol;
use crate::error::{Error, Result};

/// Runs all members side by side and accepts iff one of them accepts.
pub struct UnionTester {
    n: usize,
    members: Vec<Box<dyn Tester>>,
}

impl UnionTester {
    pub fn new(n: usize, members: Vec<Box<dyn Tester>>) -> Self {
        debug_assert!(members.iter().all(|m| m.window() == n));
        Self { n, members }
    }

    pub fn members(&self) -> &[Box<dyn Tester>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Tester for UnionTester {
    fn window(&self) -> usize {
        self.n
    }

    fn feed(&mut self, a: Symbol) {
        for m in &mut self.members {
            m.feed(a);
        }
    }

    fn decide(&self) -> Decision {
        Decision::from_bool(self.members.iter().any(|m| m.decide().is_accept()))
    }

    fn state_bits(&self) -> u64 {
        self.members.iter().map(|m| m.state_bits()).sum()
    }
}

/// Independent copies per member so that a member errs with probability at
/// most `beta / k`, counting a single copy's error as `1/2`: the least `r`
/// with `(1/2)^r ≤ beta / k`.
pub fn amplification_copies(beta: f64, k: usize) -> Result<usize> {
    if !(beta > 0.0 && beta < 1.0) || k == 0 {
        return Err(Error::Parameter(format!("need 0 < beta < 1 and k > 0, got {beta}, {k}")));
    }
    let target = beta / k as f64;
    let mut r = 1;
    while 0.5f64.powi(r as i32) > target {
        r += 1;
    }
    Ok(r)
}
