use std::fmt;
use std::sync::Arc;

use super::term::Name;

/// Simple types over named base types.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Base(Name),
    Arrow(Arc<Type>, Arc<Type>),
}

impl Type {
    pub fn base(name: &str) -> Type {
        Type::Base(name.into())
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Arc::new(dom), Arc::new(cod))
    }

    /// Nesting depth of arrows; base types have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Type::Base(_) => 0,
            Type::Arrow(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Functional order: base types are order 0, `σ → τ` is
    /// `max(order σ + 1, order τ)`.
    pub fn order(&self) -> usize {
        match self {
            Type::Base(_) => 0,
            Type::Arrow(a, b) => (a.order() + 1).max(b.order()),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(n) => f.write_str(n),
            Type::Arrow(a, b) => match **a {
                Type::Arrow(..) => write!(f, "({a}) -> {b}"),
                Type::Base(_) => write!(f, "{a} -> {b}"),
            },
        }
    }
}
