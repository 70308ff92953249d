//! ε-erasure into the differential λ-calculus and its simulation check.

use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

use crate::canonical::{canonicalize, diff_eq, normal_canon, perm_eq, pri, Canonical, Summand};
use crate::reduction::step;
use crate::syntax::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulationError {
    #[error("the second term is not a one-step reduct of the first")]
    NotAStep,
    #[error("no match within {0} steps")]
    Inconclusive(usize),
}

/// `⌈t⌉`: deletes every ε-marked component.
pub fn erase(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::Zero => t.clone(),
        Term::Eps(_) => Term::Zero,
        Term::Lam(b, body) => Term::Lam(b.clone(), Arc::new(erase(body))),
        Term::App(f, a) => Term::app(erase(f), erase(a)),
        Term::DApp(f, a) => Term::dapp(erase(f), erase(a)),
        Term::Sum(l, r) => Term::sum(erase(l), erase(r)),
    }
}

/// Equivalence of the differential λ-calculus: `∼ε` with ε read as zero.
///
/// Only the exponent-zero summands of the canonical forms are compared, so
/// derivatives become additive in their argument. `diff_eq` is finer even
/// on ε-free terms: `D(s)·(t + e)` keeps its `ε D(D(s)·t)·e` correction.
pub fn erased_eq(s: &Term, t: &Term) -> bool {
    let primal = |u: &Term| Canonical::from_summands(pri(&canonicalize(u)).0.into_iter().map(|b| Summand::new(0, b)));
    perm_eq(&primal(s), &primal(t))
}

/// Checks `⌈s⌉ ⇒* ⌈s′⌉` for a step `s ⇒ s′` by breadth-first search.
///
/// A step of the erased fragment is a step followed by erasure, which
/// discards the ε-corrections differential substitution introduces.
/// Returns `Ok(false)` when the reachable space is exhausted without a
/// match and `Inconclusive` when the bound cuts the search short.
pub fn erase_simulates(s: &Term, s2: &Term, bound: usize) -> Result<bool, SimulationError> {
    if !step(s).terms().any(|t| t == s2) {
        return Err(SimulationError::NotAStep);
    }
    let target = erase(s2);
    let start = erase(s);
    let mut seen: HashSet<Canonical> = HashSet::from([normal_canon(&start)]);
    let mut frontier = vec![start];
    for depth in 0..=bound {
        if frontier.iter().any(|w| diff_eq(w, &target)) {
            return Ok(true);
        }
        if depth == bound {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            for succ in step(w).successors {
                let e = erase(&succ.term);
                if seen.insert(normal_canon(&e)) {
                    next.push(e);
                }
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        frontier = next;
    }
    Err(SimulationError::Inconclusive(bound))
}
