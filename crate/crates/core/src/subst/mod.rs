//! Capture-avoiding and differential substitution.
//!
//! Terms are locally nameless, so substituting a locally closed term
//! under binders never captures and needs no shifting.

use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("variable `{0}` is free in the argument of its own differential substitution")]
    FreeInArgument(String),
    #[error("{binders} binders but {args} arguments")]
    ArityMismatch { binders: usize, args: usize },
}

/// `t[x := s]`.
pub fn subst(t: &Term, x: &str, s: &Term) -> Term {
    if !t.has_free(x) {
        return t.clone();
    }
    match t {
        Term::Var(Var::Free(n)) if &**n == x => s.clone(),
        Term::Var(_) | Term::Zero => t.clone(),
        Term::Lam(b, body) => Term::Lam(b.clone(), Arc::new(subst(body, x, s))),
        Term::App(a, b) => Term::app(subst(a, x, s), subst(b, x, s)),
        Term::DApp(a, b) => Term::dapp(subst(a, x, s), subst(b, x, s)),
        Term::Eps(a) => Term::eps(subst(a, x, s)),
        Term::Sum(a, b) => Term::sum(subst(a, x, s), subst(b, x, s)),
    }
}

/// `∂t/∂x · s`; requires `x ∉ FV(s)`.
pub fn dsubst(t: &Term, x: &str, s: &Term) -> Result<Term, SubstError> {
    if s.has_free(x) {
        return Err(SubstError::FreeInArgument(x.to_string()));
    }
    Ok(dsubst_unchecked(t, x, s))
}

/// `∂t/∂x · s` without the freshness check.
pub(crate) fn dsubst_unchecked(t: &Term, x: &str, s: &Term) -> Term {
    let shifted = || Term::sum(Term::var(x), Term::eps(s.clone()));
    match t {
        Term::Var(Var::Free(n)) if &**n == x => s.clone(),
        Term::Var(_) | Term::Zero => Term::Zero,
        Term::Lam(b, body) => Term::Lam(b.clone(), Arc::new(dsubst_unchecked(body, x, s))),
        Term::App(f, e) => {
            let de = dsubst_unchecked(e, x, s);
            let df = dsubst_unchecked(f, x, s);
            Term::sum(
                Term::app(Term::dapp((**f).clone(), de), (**e).clone()),
                Term::app(df, subst(e, x, &shifted())),
            )
        }
        Term::DApp(f, e) => {
            let de = dsubst_unchecked(e, x, s);
            let df = dsubst_unchecked(f, x, s);
            Term::sum(
                Term::sum(
                    Term::dapp((**f).clone(), de.clone()),
                    Term::dapp(df, subst(e, x, &shifted())),
                ),
                Term::eps(Term::dapp(Term::dapp((**f).clone(), (**e).clone()), de)),
            )
        }
        Term::Eps(a) => Term::eps(dsubst_unchecked(a, x, s)),
        Term::Sum(a, b) => Term::sum(dsubst_unchecked(a, x, s), dsubst_unchecked(b, x, s)),
    }
}

/// Left-to-right nest of differential substitutions.
pub fn dsubst_seq(t: &Term, binders: &[&str], args: &[Term]) -> Result<Term, SubstError> {
    if binders.len() != args.len() {
        return Err(SubstError::ArityMismatch {
            binders: binders.len(),
            args: args.len(),
        });
    }
    binders
        .iter()
        .zip(args)
        .try_fold(t.clone(), |acc, (x, u)| dsubst(&acc, x, u))
}

/// `s[x:=t] + ε((∂s/∂x·e)[x:=t])`; requires `x ∉ FV(e)`.
pub fn taylor_rhs(s: &Term, x: &str, t: &Term, e: &Term) -> Result<Term, SubstError> {
    let d = dsubst(s, x, e)?;
    Ok(Term::sum(subst(s, x, t), Term::eps(subst(&d, x, t))))
}
