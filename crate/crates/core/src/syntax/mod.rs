//! Raw terms, types, parsing and printing.

mod named;
mod parse;
mod print;
mod term;
mod types;

pub use named::{from_named, to_json, to_named, Named};
pub use parse::{parse, GRAMMAR, parse_context, parse_named, parse_type, ParseError, ParseErrorKind};
pub use print::{print, print_named};
pub use term::{alpha_eq, free_vars, fresh_name, open_fresh, Binder, Name, Term, Var, VarSet};
pub use types::Type;
