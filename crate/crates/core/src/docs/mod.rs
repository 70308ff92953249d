//! Reference pages rendered from the engine itself: the grammar, the rule
//! tables, a gallery of worked examples and the axiom reports.
//!
//! Output is byte-for-byte reproducible; committed copies live in the
//! workspace `docs/` directory and are compared against fresh renders.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::canonical::{canonicalize, embed, normal_canon, perm_normalize, reg, Canonical};
use crate::erasure::erase;
use crate::model::{check_cdc_axioms, check_lambda_axioms, eval, FinGroup, ModelConfig, SemValue, DEFAULT_BUDGET};
use crate::reduction::{normalize, render_path, step, wf_step};
use crate::subst::dsubst;
use crate::syntax::{parse, parse_type, Term, GRAMMAR};
use crate::testkit::EQUIV_RULES;
use crate::typing::{check, infer, TypingContext};

/// The worked canonicalization input.
pub const CANON_EXAMPLE: &str = "D(u) * (x + y + eps z)";

/// Page file names with their renderers, in output order.
pub const PAGES: &[(&str, fn() -> String)] = &[
    ("grammar.md", grammar_page),
    ("rules.md", rules_page),
    ("gallery.md", gallery_page),
    ("axioms.md", axioms_page),
];

/// Renders every page as `(file name, contents)`.
pub fn render_all() -> Vec<(&'static str, String)> {
    PAGES.iter().map(|(name, f)| (*name, f())).collect()
}

/// Writes every page into `dir`.
pub fn regen_examples(dir: &Path) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, text) in render_all() {
        std::fs::write(dir.join(name), text)?;
    }
    Ok(())
}

fn p(src: &str) -> Term {
    parse(src).expect("documentation examples parse")
}

fn canon_text(c: &Canonical) -> String {
    embed(c).to_string()
}

pub fn grammar_page() -> String {
    let mut out = String::new();
    out.push_str("# Surface grammar\n\n");
    out.push_str("Loosest to tightest: `+`, then the λ body, then application, then the\n");
    out.push_str("prefix forms `eps t` and `D(s) * t`, whose argument is a single prefix.\n\n");
    out.push_str("```\n");
    out.push_str(GRAMMAR);
    out.push_str("```\n\n");
    out.push_str("Binder annotations `\\x:T. t` are read by the type checker and ignored elsewhere.\n");
    out.push_str("JSON export uses objects tagged by `\"tag\"`, one of\n");
    out.push_str("`var`, `lam`, `app`, `dapp`, `eps`, `sum`, `zero`.\n");
    out
}

fn table(out: &mut String, header: [&str; 3], rows: &[(&str, &str, &str)]) {
    let _ = writeln!(out, "| {} | {} | {} |", header[0], header[1], header[2]);
    out.push_str("|---|---|---|\n");
    for (a, b, c) in rows {
        let _ = writeln!(out, "| {} | `{}` | `{}` |", a, b.replace('|', "\\|"), c.replace('|', "\\|"));
    }
    out.push('\n');
}

const PERM_RULES: &[(&str, &str, &str)] = &[
    ("assoc", "s + (t + e)", "(s + t) + e"),
    ("comm", "s + t", "t + s"),
    ("swap", "D(D(s) * t) * e", "D(D(s) * e) * t"),
];

const SUBST_RULES: &[(&str, &str, &str)] = &[
    ("var", "x[x := s]", "s"),
    ("other", "y[x := s]", "y"),
    ("lam", "(\\y. t)[x := s]", "\\y. t[x := s]   (y not free in s)"),
    ("app", "(t e)[x := s]", "t[x := s] e[x := s]"),
    ("dapp", "(D(t) * e)[x := s]", "D(t[x := s]) * e[x := s]"),
    ("eps", "(eps t)[x := s]", "eps t[x := s]"),
    ("sum", "(t + e)[x := s]", "t[x := s] + e[x := s]"),
    ("zero", "0[x := s]", "0"),
];

const DSUBST_RULES: &[(&str, &str, &str)] = &[
    ("var", "dx/dx . s", "s"),
    ("other", "dy/dx . s", "0"),
    ("lam", "d(\\y. t)/dx . s", "\\y. dt/dx . s   (y not free in s)"),
    ("app", "d(t e)/dx . s", "(D(t) * (de/dx . s)) e + (dt/dx . s) e[x := x + eps s]"),
    (
        "dapp",
        "d(D(t) * e)/dx . s",
        "D(t) * (de/dx . s) + D(dt/dx . s) * e[x := x + eps s] + eps D(D(t) * e) * (de/dx . s)",
    ),
    ("eps", "d(eps t)/dx . s", "eps (dt/dx . s)"),
    ("sum", "d(t + e)/dx . s", "dt/dx . s + de/dx . s"),
    ("zero", "d0/dx . s", "0"),
];

const REDUCTION_RULES: &[(&str, &str, &str)] = &[
    ("beta", "(\\x. t) s", "t[x := s]"),
    ("diff", "D(\\x. t) * s", "\\x. dt/dx . s"),
];

const PAR_RULES: &[(&str, &str, &str)] = &[
    ("refl", "x", "x"),
    ("lam", "\\x. s", "\\x. s'   if s => s'"),
    ("eps", "eps t", "eps t'   if t => t'"),
    ("sum", "s + t", "s' + t'   if s => s', t => t'"),
    ("ap", "s t", "s' t'   if s => s', t => t'"),
    ("D", "D(s) * t", "D(s') * t'   if s => s', t => t'"),
    ("beta", "s t", "s'[x := t']   if s => \\x. s', t => t'"),
    ("diff", "D(s) * t", "\\x. ds'/dx . t'   if s => \\x. s', t => t'"),
];

const TYPING_RULES: &[(&str, &str, &str)] = &[
    ("var", "x : τ in Γ", "Γ |- x : τ"),
    ("lam", "Γ, x : σ |- t : τ", "Γ |- \\x. t : σ -> τ"),
    ("app", "Γ |- s : σ -> τ   and   Γ |- t : σ", "Γ |- s t : τ"),
    ("zero", "", "Γ |- 0 : τ"),
    ("sum", "Γ |- s : τ   and   Γ |- t : τ", "Γ |- s + t : τ"),
    ("eps", "Γ |- t : τ", "Γ |- eps t : τ"),
    ("dapp", "Γ |- s : σ -> τ   and   Γ |- t : σ", "Γ |- D(s) * t : σ -> τ"),
];

const ERASURE_RULES: &[(&str, &str, &str)] = &[
    ("var", "[x]", "x"),
    ("zero", "[0]", "0"),
    ("sum", "[s + t]", "[s] + [t]"),
    ("eps", "[eps t]", "0"),
    ("app", "[s t]", "[s] [t]"),
    ("dapp", "[D(s) * t]", "D([s]) * [t]"),
    ("lam", "[\\x. t]", "\\x. [t]"),
];

pub fn rules_page() -> String {
    let mut out = String::new();
    out.push_str("# Rule tables\n\n");
    out.push_str("Terms are written in the surface syntax. `dt/dx . s` is the differential\n");
    out.push_str("substitution of `s` for `x` in `t`; `[t]` is the ε-erasure of `t`.\n\n");
    out.push_str("## Differential equivalence\n\n");
    out.push_str("Generating rules, closed under contexts, symmetry and transitivity.\n\n");
    table(&mut out, ["rule", "left", "right"], EQUIV_RULES);
    out.push_str("## Permutative equivalence\n\n");
    table(&mut out, ["rule", "left", "right"], PERM_RULES);
    out.push_str("## Substitution\n\n");
    table(&mut out, ["clause", "term", "result"], SUBST_RULES);
    out.push_str("## Differential substitution\n\n");
    out.push_str("Defined when `x` is not free in `s`.\n\n");
    table(&mut out, ["clause", "term", "result"], DSUBST_RULES);
    out.push_str("## One-step reduction\n\n");
    out.push_str("Closed under all term contexts.\n\n");
    table(&mut out, ["rule", "redex", "reduct"], REDUCTION_RULES);
    out.push_str("## Parallel reduction\n\n");
    table(&mut out, ["rule", "term", "reduct"], PAR_RULES);
    out.push_str("## Simple types\n\n");
    table(&mut out, ["rule", "premises", "conclusion"], TYPING_RULES);
    out.push_str("## Erasure\n\n");
    table(&mut out, ["clause", "term", "result"], ERASURE_RULES);
    out
}

pub fn gallery_page() -> String {
    let mut out = String::new();
    out.push_str("# Worked examples\n\n");
    out.push_str("Every output on this page is computed by the engine when the page is rendered.\n\n");

    out.push_str("## Canonicalizing a derivative along a sum\n\n");
    let arg = p("x + y + eps z");
    let c_arg = canonicalize(&arg);
    let regd = reg(&crate::canonical::Basic::var("u"), &c_arg);
    let full = canonicalize(&p(CANON_EXAMPLE));
    let _ = writeln!(out, "Input: `{CANON_EXAMPLE}`\n");
    let _ = writeln!(out, "1. Canonical form of the argument: `{}`", canon_text(&c_arg));
    let _ = writeln!(out, "2. Regularization against `u`, {} summands:", regd.len());
    for s in regd.summands() {
        let _ = writeln!(out, "   - `{}`", s.to_term());
    }
    let _ = writeln!(out, "3. Normalized result: `{}`", canon_text(&perm_normalize(&full)));
    out.push('\n');

    out.push_str("## One-step reduction\n\n");
    out.push_str("| term | kind | path | reduct |\n|---|---|---|---|\n");
    for src in ["(\\x. x) 0", "D(\\x. x) * u", "D(\\x. x x) * u", "(\\x. x) ((\\y. y) z)"] {
        for s in step(&p(src)).successors {
            let _ = writeln!(out, "| `{src}` | {} | `{}` | `{}` |", s.kind, render_path(&s.path), s.term);
        }
    }
    out.push('\n');

    out.push_str("## Well-formed reduction\n\n");
    for src in ["(\\x. x + 0) 0", "0 ((\\x. x) y)", "D(D(\\x. x x) * u) * v"] {
        let succ: Vec<String> = wf_step(&p(src)).iter().map(canon_text).collect();
        let _ = writeln!(out, "- `{src}`: {} successor(s)", succ.len());
        for s in succ {
            let _ = writeln!(out, "  - `{s}`");
        }
    }
    out.push('\n');

    out.push_str("## Normalization\n\n");
    for (src, fuel) in [("(\\x. x) 0", 10), ("D(\\x. x x) * u", 10), ("(\\x. x x) (\\x. x x)", 50)] {
        match normalize(&p(src), fuel) {
            Ok((nf, n)) => {
                let _ = writeln!(out, "- `{src}` normalizes in {n} step(s) to `{}`", canon_text(&nf));
            }
            Err(e) => {
                let _ = writeln!(out, "- `{src}` with fuel {fuel}: {e}");
            }
        }
    }
    out.push('\n');

    out.push_str("## Differential substitution\n\n");
    for (src, x, s) in [("x", "x", "u"), ("y", "x", "u"), ("x x", "x", "u")] {
        let d = dsubst(&p(src), x, &p(s)).expect("argument avoids the variable");
        let _ = writeln!(
            out,
            "- `d({src})/d{x} . {s}` = `{d}`, normal form `{}`",
            canon_text(&normal_canon(&d))
        );
    }
    out.push('\n');

    out.push_str("## Typing\n\n");
    let a = parse_type("a").expect("type parses");
    let aa = parse_type("a -> a").expect("type parses");
    let ab = TypingContext::new()
        .with("s", parse_type("a -> b").expect("type parses"))
        .with("t", a.clone());
    let rows: Vec<(TypingContext, &str, crate::syntax::Type)> = vec![
        (TypingContext::new(), "\\x:a. x", aa.clone()),
        (TypingContext::new(), "0", aa),
        (ab, "D(s) * t", parse_type("a -> b").expect("type parses")),
        (TypingContext::new(), "x", a.clone()),
    ];
    for (ctx, src, ty) in rows {
        let judgment = format!("{ctx} |- {src} : {ty}");
        let _ = writeln!(out, "- `{}` is {}", judgment.trim_start(), if check(&ctx, &p(src), &ty) { "derivable" } else { "not derivable" });
    }
    for src in ["\\x:a. x", "0"] {
        let shown = infer(&TypingContext::new(), &p(src)).map_or("nothing".to_string(), |t| t.to_string());
        let _ = writeln!(out, "- synthesized type of `{src}`: {shown}");
    }
    out.push('\n');

    out.push_str("## Evaluation in the group model\n\n");
    let cfg = ModelConfig::new([("a", 3)]).expect("valid model");
    let ctx = TypingContext::new().with("z", a.clone()).with("w", a.clone());
    let env = [SemValue::elem(3, 1), SemValue::elem(3, 1)];
    for src in ["(D(\\x:a. x + x) * w) z", "\\x:a. x + z", "D(\\x:a. x + x) * w"] {
        let ty = if src.starts_with('\\') || src.starts_with("D(") {
            parse_type("a -> a").expect("type parses")
        } else {
            a.clone()
        };
        let v = eval(&ctx, &env, &p(src), &ty, &cfg).expect("example evaluates");
        let _ = writeln!(out, "- `{src}` at `z = 1, w = 1` over Z3 denotes `{v}`");
    }
    out.push('\n');

    out.push_str("## Erasure\n\n");
    for src in ["eps t", "D(s) * t", "x + eps y", "\\x. x + eps (D(x) * x)"] {
        let _ = writeln!(out, "- `{src}` erases to `{}`", erase(&p(src)));
    }
    out
}

pub fn axioms_page() -> String {
    let z2 = FinGroup::cyclic(2);
    let z22 = FinGroup::product(&z2, &z2);
    let mut out = String::new();
    out.push_str("# Axiom reports\n\n");
    out.push_str("Brute-force checks in the model of Abelian groups and arbitrary maps,\n");
    out.push_str(&format!("with a budget of {DEFAULT_BUDGET} map tuples per law and seed 0.\n\n```\n"));
    for (a, b) in [(&z2, &z2), (&z22, &z2)] {
        let _ = writeln!(out, "{}", check_cdc_axioms(a, b, DEFAULT_BUDGET, 0));
    }
    let _ = writeln!(out, "{}", check_lambda_axioms(&z2, &z2, &z2, DEFAULT_BUDGET, 0));
    out.push_str("```\n");
    out
}
