//! One-step, well-formed and parallel reduction, full parallel reducts
//! and a fuel-bounded normalizer.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::canonical::{canonicalize, embed, normal_canon, perm_normalize, Basic, Canonical, Summand};
use crate::subst::dsubst_unchecked;
use crate::syntax::{open_fresh, Binder, Term};

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RedexKind {
    Beta,
    Diff,
}

impl fmt::Display for RedexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RedexKind::Beta => "beta",
            RedexKind::Diff => "diff",
        })
    }
}

/// One move from a node to a child.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathStep {
    Body,
    Fun,
    Arg,
    Left,
    Right,
}

impl fmt::Display for PathStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathStep::Body => "body",
            PathStep::Fun => "fun",
            PathStep::Arg => "arg",
            PathStep::Left => "left",
            PathStep::Right => "right",
        })
    }
}

/// Renders a path as dot-separated steps, `.` for the root.
pub fn render_path(path: &[PathStep]) -> String {
    if path.is_empty() {
        return ".".into();
    }
    path.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(".")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Successor {
    pub term: Term,
    pub kind: RedexKind,
    pub path: Vec<PathStep>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepResult {
    pub successors: Vec<Successor>,
}

impl StepResult {
    pub fn is_empty(&self) -> bool {
        self.successors.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.successors.iter().map(|s| &s.term)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("fuel exhausted after {0} steps")]
    FuelExhausted(usize),
}

/// `(λ.body) arg ⇒ body[0 := arg]`.
fn fire_beta(body: &Term, arg: &Term) -> Term {
    body.open(arg)
}

/// `D(λx.body)·arg ⇒ λx.(∂body/∂x · arg)`.
fn fire_diff(binder: &Binder, body: &Term, arg: &Term) -> Term {
    let (z, opened) = open_fresh(body);
    let d = dsubst_unchecked(&opened, &z, arg);
    Term::Lam(binder.clone(), Arc::new(d.close(&z)))
}

/// All contextual one-step reducts.
pub fn step(t: &Term) -> StepResult {
    let mut out = Vec::new();
    let mut path = Vec::new();
    step_into(t, &mut path, &mut out, &|x| x);
    StepResult { successors: out }
}

fn step_into(
    t: &Term,
    path: &mut Vec<PathStep>,
    out: &mut Vec<Successor>,
    wrap: &dyn Fn(Term) -> Term,
) {
    match t {
        Term::Var(_) | Term::Zero => {}
        Term::Lam(b, body) => {
            let (z, opened) = open_fresh(body);
            path.push(PathStep::Body);
            step_into(&opened, path, out, &|x: Term| {
                wrap(Term::Lam(b.clone(), Arc::new(x.close(&z))))
            });
            path.pop();
        }
        Term::App(f, a) => {
            if let Term::Lam(_, body) = &**f {
                out.push(Successor {
                    term: wrap(fire_beta(body, a)),
                    kind: RedexKind::Beta,
                    path: path.clone(),
                });
            }
            path.push(PathStep::Fun);
            step_into(f, path, out, &|x| wrap(Term::App(Arc::new(x), a.clone())));
            path.pop();
            path.push(PathStep::Arg);
            step_into(a, path, out, &|x| wrap(Term::App(f.clone(), Arc::new(x))));
            path.pop();
        }
        Term::DApp(f, a) => {
            if let Term::Lam(b, body) = &**f {
                out.push(Successor {
                    term: wrap(fire_diff(b, body, a)),
                    kind: RedexKind::Diff,
                    path: path.clone(),
                });
            }
            path.push(PathStep::Fun);
            step_into(f, path, out, &|x| wrap(Term::DApp(Arc::new(x), a.clone())));
            path.pop();
            path.push(PathStep::Arg);
            step_into(a, path, out, &|x| wrap(Term::DApp(f.clone(), Arc::new(x))));
            path.pop();
        }
        Term::Eps(a) => {
            path.push(PathStep::Body);
            step_into(a, path, out, &|x| wrap(Term::Eps(Arc::new(x))));
            path.pop();
        }
        Term::Sum(l, r) => {
            path.push(PathStep::Left);
            step_into(l, path, out, &|x| wrap(Term::Sum(Arc::new(x), r.clone())));
            path.pop();
            path.push(PathStep::Right);
            step_into(r, path, out, &|x| wrap(Term::Sum(l.clone(), Arc::new(x))));
            path.pop();
        }
    }
}

pub fn has_redex(t: &Term) -> bool {
    match t {
        Term::Var(_) | Term::Zero => false,
        Term::App(f, a) | Term::DApp(f, a) => {
            matches!(**f, Term::Lam(..)) || has_redex(f) || has_redex(a)
        }
        Term::Lam(_, b) | Term::Eps(b) => has_redex(b),
        Term::Sum(l, r) => has_redex(l) || has_redex(r),
    }
}

/// Variants of a basic term with one λ-headed differential tower
/// reordered so that a different argument is applied first.
fn tower_rotations(b: &Basic) -> Vec<Basic> {
    match b {
        Basic::Var(_) => Vec::new(),
        Basic::Lam(binder, body) => tower_rotations(body)
            .into_iter()
            .map(|nb| Basic::Lam(binder.clone(), Arc::new(nb)))
            .collect(),
        Basic::App(f, args) => {
            let mut out: Vec<Basic> = tower_rotations(f)
                .into_iter()
                .map(|nf| Basic::App(Arc::new(nf), args.clone()))
                .collect();
            for (i, a) in args.0.iter().enumerate() {
                for na in tower_rotations(a) {
                    let mut nargs = args.clone();
                    nargs.0[i] = na;
                    out.push(Basic::App(f.clone(), nargs));
                }
            }
            out
        }
        Basic::DApp(..) => {
            // args innermost first
            let mut args = Vec::new();
            let mut cur = b;
            while let Basic::DApp(f, a) = cur {
                args.push((**a).clone());
                cur = f;
            }
            args.reverse();
            let base = cur.clone();
            let rebuild = |base: &Basic, args: &[Basic]| {
                args.iter()
                    .fold(base.clone(), |acc, a| Basic::dapp(acc, a.clone()))
            };
            let mut out = Vec::new();
            if base.is_lam() {
                for j in 1..args.len() {
                    let mut order = args.clone();
                    let first = order.remove(j);
                    order.insert(0, first);
                    out.push(rebuild(&base, &order));
                }
            }
            for nb in tower_rotations(&base) {
                out.push(rebuild(&nb, &args));
            }
            for i in 0..args.len() {
                for na in tower_rotations(&args[i]) {
                    let mut nargs = args.clone();
                    nargs[i] = na;
                    out.push(rebuild(&base, &nargs));
                }
            }
            out
        }
    }
}

/// Permutative variants of a canonical term that expose different redexes.
pub fn redex_variants(c: &Canonical) -> Vec<Canonical> {
    let mut out = vec![c.clone()];
    for (i, s) in c.summands().iter().enumerate() {
        for nb in tower_rotations(s.body()) {
            let mut v: Vec<Summand> = c.summands().to_vec();
            v[i] = Summand::new(s.exponent(), nb);
            out.push(Canonical::from_summands(v));
        }
    }
    out
}

/// One-step reducts of the ∼ε class of `t`, as normalized canonical forms.
pub fn wf_step(t: &Term) -> Vec<Canonical> {
    let n = normal_canon(t);
    let mut seen = BTreeSet::new();
    for v in redex_variants(&n) {
        for s in step(&embed(&v)).successors {
            seen.insert(perm_normalize(&canonicalize(&s.term)));
        }
    }
    seen.into_iter().collect()
}

/// Full parallel reduct.
pub fn fpr(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::Zero => t.clone(),
        Term::Lam(b, body) => {
            let (z, opened) = open_fresh(body);
            Term::Lam(b.clone(), Arc::new(fpr(&opened).close(&z)))
        }
        Term::App(s, a) => {
            let fs = fpr(s);
            let fa = fpr(a);
            match &fs {
                Term::Lam(_, e) => fire_beta(e, &fa),
                _ => Term::app(fs, fa),
            }
        }
        Term::DApp(s, a) => {
            let fs = fpr(s);
            let fa = fpr(a);
            match &fs {
                Term::Lam(b, e) => fire_diff(b, e, &fa),
                _ => Term::dapp(fs, fa),
            }
        }
        Term::Eps(a) => Term::eps(fpr(a)),
        Term::Sum(l, r) => Term::sum(fpr(l), fpr(r)),
    }
}

/// Every `t′` with `t ⇉ t′`. Exponential in the number of redexes.
pub fn par_reducts(t: &Term) -> HashSet<Term> {
    match t {
        Term::Var(_) | Term::Zero => HashSet::from([t.clone()]),
        Term::Lam(b, body) => {
            let (z, opened) = open_fresh(body);
            par_reducts(&opened)
                .into_iter()
                .map(|r| Term::Lam(b.clone(), Arc::new(r.close(&z))))
                .collect()
        }
        Term::Eps(a) => par_reducts(a).into_iter().map(Term::eps).collect(),
        Term::Sum(l, r) => {
            let rl = par_reducts(l);
            let rr = par_reducts(r);
            let mut out = HashSet::new();
            for x in &rl {
                for y in &rr {
                    out.insert(Term::sum(x.clone(), y.clone()));
                }
            }
            out
        }
        Term::App(s, a) | Term::DApp(s, a) => {
            let is_app = matches!(t, Term::App(..));
            let rs = par_reducts(s);
            let ra = par_reducts(a);
            let mut out = HashSet::new();
            for x in &rs {
                for y in &ra {
                    if is_app {
                        out.insert(Term::app(x.clone(), y.clone()));
                    } else {
                        out.insert(Term::dapp(x.clone(), y.clone()));
                    }
                    if let Term::Lam(b, e) = x {
                        out.insert(if is_app { fire_beta(e, y) } else { fire_diff(b, e, y) });
                    }
                }
            }
            out
        }
    }
}

/// Decides `s ⇉ t` (up to α-equivalence).
pub fn par_step_check(s: &Term, t: &Term) -> bool {
    par_reducts(s).contains(t)
}

/// Iterates canonicalization and full parallel reduction until the
/// canonical form has no redex.
///
/// A λ-headed differential tower is a redex in every argument order, so
/// the normalized representative has a redex exactly when `wf_step`
/// returns successors.
pub fn normalize(t: &Term, fuel: usize) -> Result<(Canonical, usize), ReductionError> {
    let mut cur = t.clone();
    let mut steps = 0;
    loop {
        let n = normal_canon(&cur);
        let e = embed(&n);
        if !has_redex(&e) {
            return Ok((n, steps));
        }
        if steps == fuel {
            return Err(ReductionError::FuelExhausted(fuel));
        }
        cur = fpr(&e);
        steps += 1;
    }
}

/// Every summand is a λ-abstraction.
pub fn is_canonical_value(t: &Canonical) -> bool {
    t.summands().iter().all(|s| s.body().is_lam())
}
