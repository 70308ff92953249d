//! Named view of terms, used by the parser, printer and JSON export.

use std::sync::Arc;

use serde::Serialize;

use super::term::{Binder, Term, Var, VarSet};
use super::types::Type;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum Named {
    Var {
        name: String,
    },
    Lam {
        binder: String,
        #[serde(serialize_with = "ser_ann")]
        annotation: Option<Type>,
        body: Box<Named>,
    },
    App {
        fun: Box<Named>,
        arg: Box<Named>,
    },
    Dapp {
        fun: Box<Named>,
        arg: Box<Named>,
    },
    Eps {
        body: Box<Named>,
    },
    Sum {
        left: Box<Named>,
        right: Box<Named>,
    },
    Zero,
}

fn ser_ann<S: serde::Serializer>(ann: &Option<Type>, s: S) -> Result<S::Ok, S::Error> {
    match ann {
        Some(ty) => s.collect_str(ty),
        None => s.serialize_none(),
    }
}

/// Resolve names against binders, innermost first.
pub fn from_named(n: &Named) -> Term {
    fn go(n: &Named, scope: &mut Vec<String>) -> Term {
        match n {
            Named::Var { name } => match scope.iter().rev().position(|b| b == name) {
                Some(i) => Term::Var(Var::Bound(i as u32)),
                None => Term::var(name),
            },
            Named::Lam {
                binder,
                annotation,
                body,
            } => {
                scope.push(binder.clone());
                let b = go(body, scope);
                scope.pop();
                Term::Lam(Binder::new(binder, annotation.clone()), Arc::new(b))
            }
            Named::App { fun, arg } => Term::app(go(fun, scope), go(arg, scope)),
            Named::Dapp { fun, arg } => Term::dapp(go(fun, scope), go(arg, scope)),
            Named::Eps { body } => Term::eps(go(body, scope)),
            Named::Sum { left, right } => Term::sum(go(left, scope), go(right, scope)),
            Named::Zero => Term::Zero,
        }
    }
    go(n, &mut Vec::new())
}

/// Choose display names for binders.
///
/// A binder keeps its hint unless that would capture a free variable of
/// its body or shadow an enclosing binder; clashes are resolved by priming.
pub fn to_named(t: &Term) -> Named {
    fn go(t: &Term, scope: &mut Vec<String>) -> Named {
        match t {
            Term::Var(Var::Free(n)) => Named::Var {
                name: n.to_string(),
            },
            Term::Var(Var::Bound(i)) => {
                let idx = scope.len().checked_sub(1 + *i as usize);
                let name = match idx {
                    Some(k) => scope[k].clone(),
                    None => format!("#{i}"),
                };
                Named::Var { name }
            }
            Term::Lam(b, body) => {
                let avoid: VarSet = body.free_vars();
                let base = if b.hint.starts_with('%') || b.hint.is_empty() {
                    "x".to_string()
                } else {
                    b.hint.to_string()
                };
                let mut name = base;
                while avoid.contains(name.as_str()) || scope.contains(&name) {
                    name.push('\'');
                }
                scope.push(name.clone());
                let nb = go(body, scope);
                scope.pop();
                Named::Lam {
                    binder: name,
                    annotation: b.ann.clone(),
                    body: Box::new(nb),
                }
            }
            Term::App(a, b) => Named::App {
                fun: Box::new(go(a, scope)),
                arg: Box::new(go(b, scope)),
            },
            Term::DApp(a, b) => Named::Dapp {
                fun: Box::new(go(a, scope)),
                arg: Box::new(go(b, scope)),
            },
            Term::Eps(a) => Named::Eps {
                body: Box::new(go(a, scope)),
            },
            Term::Sum(a, b) => Named::Sum {
                left: Box::new(go(a, scope)),
                right: Box::new(go(b, scope)),
            },
            Term::Zero => Named::Zero,
        }
    }
    go(t, &mut Vec::new())
}

/// JSON AST export.
pub fn to_json(t: &Term) -> serde_json::Value {
    serde_json::to_value(to_named(t)).expect("named terms always serialize")
}
