use super::named::{to_named, Named};
use super::term::Term;

const SUM: u8 = 0;
const APP: u8 = 1;
const PREFIX: u8 = 2;

/// Print with minimal parentheses.
pub fn print(t: &Term) -> String {
    print_named(&to_named(t))
}

pub fn print_named(n: &Named) -> String {
    let mut out = String::new();
    go(n, SUM, true, &mut out);
    out
}

// `tail` is true when nothing follows at this nesting level, so an
// open-ended λ body may extend to the end without parentheses.
fn go(n: &Named, prec: u8, tail: bool, out: &mut String) {
    let needs = match n {
        Named::Var { .. } | Named::Zero => false,
        Named::Lam { .. } => !tail,
        Named::Sum { .. } => prec > SUM,
        Named::App { .. } => prec > APP,
        Named::Eps { .. } | Named::Dapp { .. } => false,
    };
    if needs {
        out.push('(');
        go(n, SUM, true, out);
        out.push(')');
        return;
    }
    match n {
        Named::Var { name } => out.push_str(name),
        Named::Zero => out.push('0'),
        Named::Lam {
            binder,
            annotation,
            body,
        } => {
            out.push('\\');
            out.push_str(binder);
            if let Some(ty) = annotation {
                out.push(':');
                out.push_str(&ty.to_string());
            }
            out.push_str(". ");
            go(body, SUM, true, out);
        }
        Named::Sum { left, right } => {
            go(left, SUM, false, out);
            out.push_str(" + ");
            go(right, APP, tail, out);
        }
        Named::App { fun, arg } => {
            go(fun, APP, false, out);
            out.push(' ');
            go(arg, PREFIX, tail, out);
        }
        Named::Eps { body } => {
            out.push_str("eps ");
            go(body, PREFIX, tail, out);
        }
        Named::Dapp { fun, arg } => {
            out.push_str("D(");
            go(fun, SUM, true, out);
            out.push_str(") * ");
            go(arg, PREFIX, tail, out);
        }
    }
}
