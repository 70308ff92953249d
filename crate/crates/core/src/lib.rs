//! Interpreter and verification toolkit for the difference λ-calculus.

pub mod canonical;
pub mod docs;
pub mod erasure;
pub mod model;
pub mod reduction;
pub mod subst;
pub mod syntax;
pub mod testkit;
pub mod typing;
