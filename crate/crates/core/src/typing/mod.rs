//! Simple types.
//!
//! Checking pushes the goal type inward; the argument type of an
//! application, which the rules quantify existentially, is solved by
//! first-order unification so that derivability is decided exactly.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::canonical::{canonicalize, embed};
use crate::syntax::{Name, Term, Type, Var};

/// Base-type name given to types no derivation constrains.
pub const UNCONSTRAINED: &str = "%any";

/// Ordered context; later entries shadow earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypingContext {
    entries: Vec<(Name, Type)>,
}

impl TypingContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: impl IntoIterator<Item = (S, Type)>) -> Self {
        TypingContext {
            entries: pairs
                .into_iter()
                .map(|(n, t)| (n.as_ref().into(), t))
                .collect(),
        }
    }

    pub fn push(&mut self, name: &str, ty: Type) {
        self.entries.push((name.into(), ty));
    }

    pub fn with(mut self, name: &str, ty: Type) -> Self {
        self.push(name, ty);
        self
    }

    pub fn lookup(&self, name: &str) -> Option<&Type> {
        self.entries
            .iter()
            .rev()
            .find(|(n, _)| &**n == name)
            .map(|(_, t)| t)
    }

    pub fn entries(&self) -> &[(Name, Type)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for TypingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(n, t)| format!("{n}:{t}")).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("type mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error("binder annotated {annotation} but the goal domain is {domain}")]
    Annotation { annotation: String, domain: String },
    #[error("no finite type satisfies {0}")]
    Infinite(String),
}

#[derive(Clone, Debug)]
enum Ty {
    Meta(usize),
    Base(Name),
    Arrow(Box<Ty>, Box<Ty>),
}

impl Ty {
    fn from_type(t: &Type) -> Ty {
        match t {
            Type::Base(n) => Ty::Base(n.clone()),
            Type::Arrow(a, b) => Ty::Arrow(Box::new(Ty::from_type(a)), Box::new(Ty::from_type(b))),
        }
    }
}

/// Term with the types fixed by one derivation: λ domains and the type
/// of every `0`.
#[derive(Clone, Debug)]
pub enum Elab {
    Var(Var),
    Lam(Type, Box<Elab>),
    App(Box<Elab>, Box<Elab>),
    DApp(Box<Elab>, Box<Elab>),
    Eps(Box<Elab>),
    Sum(Box<Elab>, Box<Elab>),
    Zero(Type),
}

enum Pending {
    Var(Var),
    Lam(Ty, Box<Pending>),
    App(Box<Pending>, Box<Pending>),
    DApp(Box<Pending>, Box<Pending>),
    Eps(Box<Pending>),
    Sum(Box<Pending>, Box<Pending>),
    Zero(Ty),
}

struct Checker<'a> {
    ctx: &'a TypingContext,
    slots: Vec<Option<Ty>>,
    bound: Vec<Ty>,
}

impl<'a> Checker<'a> {
    fn new(ctx: &'a TypingContext) -> Self {
        Checker {
            ctx,
            slots: Vec::new(),
            bound: Vec::new(),
        }
    }

    fn fresh(&mut self) -> Ty {
        self.slots.push(None);
        Ty::Meta(self.slots.len() - 1)
    }

    fn walk(&self, t: &Ty) -> Ty {
        let mut cur = t.clone();
        while let Ty::Meta(m) = cur {
            match &self.slots[m] {
                Some(next) => cur = next.clone(),
                None => return Ty::Meta(m),
            }
        }
        cur
    }

    fn occurs(&self, m: usize, t: &Ty) -> bool {
        match self.walk(t) {
            Ty::Meta(k) => k == m,
            Ty::Base(_) => false,
            Ty::Arrow(a, b) => self.occurs(m, &a) || self.occurs(m, &b),
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> Result<(), TypeError> {
        let (a, b) = (self.walk(a), self.walk(b));
        match (&a, &b) {
            (Ty::Meta(x), Ty::Meta(y)) if x == y => Ok(()),
            (Ty::Meta(x), other) | (other, Ty::Meta(x)) => {
                if self.occurs(*x, other) {
                    return Err(TypeError::Infinite(format!(
                        "{} = {}",
                        self.render(&Ty::Meta(*x)),
                        self.render(other)
                    )));
                }
                self.slots[*x] = Some(other.clone());
                Ok(())
            }
            (Ty::Base(x), Ty::Base(y)) if x == y => Ok(()),
            (Ty::Arrow(a1, b1), Ty::Arrow(a2, b2)) => {
                self.unify(a1, a2)?;
                self.unify(b1, b2)
            }
            _ => Err(TypeError::Mismatch {
                expected: self.render(&a),
                found: self.render(&b),
            }),
        }
    }

    fn zonk(&self, t: &Ty) -> Type {
        match self.walk(t) {
            Ty::Meta(_) => Type::base(UNCONSTRAINED),
            Ty::Base(n) => Type::Base(n),
            Ty::Arrow(a, b) => Type::Arrow(Arc::new(self.zonk(&a)), Arc::new(self.zonk(&b))),
        }
    }

    fn render(&self, t: &Ty) -> String {
        match self.walk(t) {
            Ty::Meta(m) => format!("?{m}"),
            Ty::Base(n) => n.to_string(),
            Ty::Arrow(a, b) => {
                let dom = self.render(&a);
                let dom = if matches!(self.walk(&a), Ty::Arrow(..)) {
                    format!("({dom})")
                } else {
                    dom
                };
                format!("{dom} -> {}", self.render(&b))
            }
        }
    }

    fn check(&mut self, t: &Term, goal: &Ty) -> Result<Pending, TypeError> {
        match t {
            Term::Var(v) => {
                let ty = match v {
                    Var::Free(n) => Ty::from_type(
                        self.ctx
                            .lookup(n)
                            .ok_or_else(|| TypeError::Unbound(n.to_string()))?,
                    ),
                    Var::Bound(i) => self.bound[self.bound.len() - 1 - *i as usize].clone(),
                };
                self.unify(goal, &ty)?;
                Ok(Pending::Var(v.clone()))
            }
            Term::Zero => Ok(Pending::Zero(goal.clone())),
            Term::Sum(a, b) => {
                let pa = self.check(a, goal)?;
                let pb = self.check(b, goal)?;
                Ok(Pending::Sum(Box::new(pa), Box::new(pb)))
            }
            Term::Eps(a) => Ok(Pending::Eps(Box::new(self.check(a, goal)?))),
            Term::Lam(binder, body) => {
                let dom = self.fresh();
                let cod = self.fresh();
                self.unify(goal, &Ty::Arrow(Box::new(dom.clone()), Box::new(cod.clone())))?;
                if let Some(ann) = &binder.ann {
                    let a = Ty::from_type(ann);
                    if self.unify(&dom, &a).is_err() {
                        return Err(TypeError::Annotation {
                            annotation: ann.to_string(),
                            domain: self.render(&dom),
                        });
                    }
                }
                self.bound.push(dom.clone());
                let pb = self.check(body, &cod);
                self.bound.pop();
                Ok(Pending::Lam(dom, Box::new(pb?)))
            }
            Term::App(f, a) => {
                let arg = self.fresh();
                let pf = self.check(f, &Ty::Arrow(Box::new(arg.clone()), Box::new(goal.clone())))?;
                let pa = self.check(a, &arg)?;
                Ok(Pending::App(Box::new(pf), Box::new(pa)))
            }
            Term::DApp(f, a) => {
                let dom = self.fresh();
                let cod = self.fresh();
                let arrow = Ty::Arrow(Box::new(dom.clone()), Box::new(cod));
                self.unify(goal, &arrow)?;
                let pf = self.check(f, &arrow)?;
                let pa = self.check(a, &dom)?;
                Ok(Pending::DApp(Box::new(pf), Box::new(pa)))
            }
        }
    }

    fn finish(&self, p: &Pending) -> Elab {
        match p {
            Pending::Var(v) => Elab::Var(v.clone()),
            Pending::Lam(d, b) => Elab::Lam(self.zonk(d), Box::new(self.finish(b))),
            Pending::App(f, a) => Elab::App(Box::new(self.finish(f)), Box::new(self.finish(a))),
            Pending::DApp(f, a) => Elab::DApp(Box::new(self.finish(f)), Box::new(self.finish(a))),
            Pending::Eps(a) => Elab::Eps(Box::new(self.finish(a))),
            Pending::Sum(a, b) => Elab::Sum(Box::new(self.finish(a)), Box::new(self.finish(b))),
            Pending::Zero(t) => Elab::Zero(self.zonk(t)),
        }
    }
}

/// Finds a derivation of `Γ ⊢ t : τ`.
pub fn elaborate(ctx: &TypingContext, t: &Term, ty: &Type) -> Result<Elab, TypeError> {
    let mut c = Checker::new(ctx);
    let p = c.check(t, &Ty::from_type(ty))?;
    Ok(c.finish(&p))
}

/// `Γ ⊢ t : τ` with a diagnostic on failure.
pub fn check_diag(ctx: &TypingContext, t: &Term, ty: &Type) -> Result<(), TypeError> {
    elaborate(ctx, t, ty).map(|_| ())
}

/// True iff `Γ ⊢ t : τ` is derivable.
pub fn check(ctx: &TypingContext, t: &Term, ty: &Type) -> bool {
    check_diag(ctx, t, ty).is_ok()
}

/// Typing of the ∼ε class: check the embedded canonical form.
pub fn check_wf(ctx: &TypingContext, t: &Term, ty: &Type) -> bool {
    check(ctx, &embed(&canonicalize(t)), ty)
}

/// Synthesizes a type where the syntax determines one.
pub fn infer(ctx: &TypingContext, t: &Term) -> Option<Type> {
    synth(ctx, &mut Vec::new(), t)
}

fn check_under(ctx: &TypingContext, bound: &[Type], t: &Term, ty: &Type) -> bool {
    let mut c = Checker::new(ctx);
    c.bound = bound.iter().map(Ty::from_type).collect();
    c.check(t, &Ty::from_type(ty)).is_ok()
}

fn synth(ctx: &TypingContext, bound: &mut Vec<Type>, t: &Term) -> Option<Type> {
    match t {
        Term::Var(Var::Free(n)) => ctx.lookup(n).cloned(),
        Term::Var(Var::Bound(i)) => bound.get(bound.len().checked_sub(1 + *i as usize)?).cloned(),
        Term::Zero => None,
        Term::Lam(b, body) => {
            let dom = b.ann.clone()?;
            bound.push(dom.clone());
            let cod = synth(ctx, bound, body);
            bound.pop();
            Some(Type::arrow(dom, cod?))
        }
        Term::App(f, a) => match synth(ctx, bound, f)? {
            Type::Arrow(d, c) if check_under(ctx, bound, a, &d) => Some((*c).clone()),
            _ => None,
        },
        Term::DApp(f, a) => match synth(ctx, bound, f)? {
            Type::Arrow(d, c) if check_under(ctx, bound, a, &d) => Some(Type::Arrow(d, c)),
            _ => None,
        },
        Term::Eps(a) => synth(ctx, bound, a),
        Term::Sum(l, r) => {
            if let Some(ty) = synth(ctx, bound, l) {
                return check_under(ctx, bound, r, &ty).then_some(ty);
            }
            let ty = synth(ctx, bound, r)?;
            check_under(ctx, bound, l, &ty).then_some(ty)
        }
    }
}
