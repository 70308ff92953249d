use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use super::types::Type;

/// Identifier of a free variable.
pub type Name = Arc<str>;

/// Finite set of free-variable names.
pub type VarSet = BTreeSet<Name>;

/// A variable occurrence: bound (de Bruijn index) or free (by name).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Bound(u32),
    Free(Name),
}

/// Binder metadata kept only for printing and typing.
///
/// Every comparison treats two binders as equal, so α-equivalent terms are
/// structurally equal.
#[derive(Clone, Debug)]
pub struct Binder {
    pub hint: Name,
    pub ann: Option<Type>,
}

impl Binder {
    pub fn new(hint: &str, ann: Option<Type>) -> Self {
        Binder { hint: hint.into(), ann }
    }
}

impl PartialEq for Binder {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}
impl Eq for Binder {}
impl PartialOrd for Binder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Binder {
    fn cmp(&self, _: &Self) -> Ordering {
        Ordering::Equal
    }
}
impl Hash for Binder {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

/// Unrestricted λε-term in locally nameless form.
///
/// Top-level terms are locally closed: every `Bound(i)` refers to an
/// enclosing `Lam`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    Lam(Binder, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    DApp(Arc<Term>, Arc<Term>),
    Eps(Arc<Term>),
    Sum(Arc<Term>, Arc<Term>),
    Zero,
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::Free(name.into()))
    }

    pub fn free(name: Name) -> Term {
        Term::Var(Var::Free(name))
    }

    /// `λname. body`, abstracting every free occurrence of `name`.
    pub fn lam(name: &str, body: Term) -> Term {
        Term::lam_ann(name, None, body)
    }

    pub fn lam_ann(name: &str, ann: Option<Type>, body: Term) -> Term {
        Term::Lam(Binder::new(name, ann), Arc::new(body.close(name)))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn dapp(f: Term, a: Term) -> Term {
        Term::DApp(Arc::new(f), Arc::new(a))
    }

    pub fn eps(t: Term) -> Term {
        Term::Eps(Arc::new(t))
    }

    pub fn sum(l: Term, r: Term) -> Term {
        Term::Sum(Arc::new(l), Arc::new(r))
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero => 1,
            Term::Lam(_, b) | Term::Eps(b) => 1 + b.size(),
            Term::App(a, b) | Term::DApp(a, b) | Term::Sum(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn free_vars(&self) -> VarSet {
        let mut out = VarSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut VarSet) {
        match self {
            Term::Var(Var::Free(n)) => {
                out.insert(n.clone());
            }
            Term::Var(Var::Bound(_)) | Term::Zero => {}
            Term::Lam(_, b) | Term::Eps(b) => b.collect_free(out),
            Term::App(a, b) | Term::DApp(a, b) | Term::Sum(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
        }
    }

    pub fn has_free(&self, name: &str) -> bool {
        match self {
            Term::Var(Var::Free(n)) => &**n == name,
            Term::Var(Var::Bound(_)) | Term::Zero => false,
            Term::Lam(_, b) | Term::Eps(b) => b.has_free(name),
            Term::App(a, b) | Term::DApp(a, b) | Term::Sum(a, b) => {
                a.has_free(name) || b.has_free(name)
            }
        }
    }

    pub fn contains_eps(&self) -> bool {
        match self {
            Term::Eps(_) => true,
            Term::Var(_) | Term::Zero => false,
            Term::Lam(_, b) => b.contains_eps(),
            Term::App(a, b) | Term::DApp(a, b) | Term::Sum(a, b) => {
                a.contains_eps() || b.contains_eps()
            }
        }
    }

    /// True when no bound index escapes its binders.
    pub fn is_locally_closed(&self) -> bool {
        fn go(t: &Term, depth: u32) -> bool {
            match t {
                Term::Var(Var::Bound(i)) => *i < depth,
                Term::Var(Var::Free(_)) | Term::Zero => true,
                Term::Lam(_, b) => go(b, depth + 1),
                Term::Eps(b) => go(b, depth),
                Term::App(a, b) | Term::DApp(a, b) | Term::Sum(a, b) => {
                    go(a, depth) && go(b, depth)
                }
            }
        }
        go(self, 0)
    }

    /// Replace free `name` by the bound index of a new outermost binder.
    pub fn close(&self, name: &str) -> Term {
        fn go(t: &Term, name: &str, depth: u32) -> Term {
            match t {
                Term::Var(Var::Free(n)) if &**n == name => Term::Var(Var::Bound(depth)),
                Term::Var(_) | Term::Zero => t.clone(),
                Term::Lam(b, body) => Term::Lam(b.clone(), Arc::new(go(body, name, depth + 1))),
                Term::Eps(b) => Term::eps(go(b, name, depth)),
                Term::App(a, b) => Term::app(go(a, name, depth), go(b, name, depth)),
                Term::DApp(a, b) => Term::dapp(go(a, name, depth), go(b, name, depth)),
                Term::Sum(a, b) => Term::sum(go(a, name, depth), go(b, name, depth)),
            }
        }
        if !self.has_free(name) {
            return self.clone();
        }
        go(self, name, 0)
    }

    /// Instantiate the loose index 0 of a binder body with a locally closed term.
    pub fn open(&self, with: &Term) -> Term {
        fn go(t: &Term, with: &Term, depth: u32) -> Term {
            match t {
                Term::Var(Var::Bound(i)) if *i == depth => with.clone(),
                Term::Var(_) | Term::Zero => t.clone(),
                Term::Lam(b, body) => Term::Lam(b.clone(), Arc::new(go(body, with, depth + 1))),
                Term::Eps(b) => Term::eps(go(b, with, depth)),
                Term::App(a, b) => Term::app(go(a, with, depth), go(b, with, depth)),
                Term::DApp(a, b) => Term::dapp(go(a, with, depth), go(b, with, depth)),
                Term::Sum(a, b) => Term::sum(go(a, with, depth), go(b, with, depth)),
            }
        }
        go(self, with, 0)
    }
}

static FRESH: AtomicU64 = AtomicU64::new(0);

/// A name no parsed term can contain; used transiently when opening binders.
pub fn fresh_name() -> Name {
    let n = FRESH.fetch_add(1, AtomicOrdering::Relaxed);
    format!("%{n}").into()
}

/// Opens a binder body with a fresh free variable.
pub fn open_fresh(body: &Term) -> (Name, Term) {
    let z = fresh_name();
    let opened = body.open(&Term::free(z.clone()));
    (z, opened)
}

pub fn alpha_eq(s: &Term, t: &Term) -> bool {
    s == t
}

pub fn free_vars(t: &Term) -> VarSet {
    t.free_vars()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print(self))
    }
}
