use rand::seq::SliceRandom;
use rand::Rng;
use std::sync::Arc;

use super::gen::{gen_sized_over, gen_term_with, GenConfig};
use crate::reduction::PathStep;
use crate::syntax::{Binder, Term};

/// The generating rules of differential equivalence, as `(name, lhs, rhs)`.
pub const EQUIV_RULES: &[(&str, &str, &str)] = &[
    ("sum-assoc", "(s + t) + e", "s + (t + e)"),
    ("sum-unit", "s + 0", "s"),
    ("sum-comm", "s + t", "t + s"),
    ("eps-zero", "eps 0", "0"),
    ("eps-sum", "eps (s + t)", "eps s + eps t"),
    ("lam-zero", "\\x. 0", "0"),
    ("lam-sum", "\\x. s + t", "(\\x. s) + (\\x. t)"),
    ("lam-eps", "\\x. eps t", "eps (\\x. t)"),
    ("app-zero", "0 s", "0"),
    ("app-sum", "(s + t) e", "s e + t e"),
    ("app-eps", "(eps s) t", "eps (s t)"),
    ("dfun-zero", "D(0) * e", "0"),
    ("dfun-sum", "D(s + t) * e", "D(s) * e + D(t) * e"),
    ("dfun-eps", "D(eps t) * e", "eps D(t) * e"),
    ("darg-zero", "D(s) * 0", "0"),
    ("darg-sum", "D(s) * (t + e)", "D(s) * t + D(s) * e + eps D(D(s) * t) * e"),
    ("darg-eps", "D(s) * (eps t)", "eps D(s) * t"),
    ("d-swap", "D(D(s) * t) * e", "D(D(s) * e) * t"),
    ("eps-absorb", "eps (eps D(D(s) * t) * e)", "eps D(D(s) * t) * e"),
    ("app-taylor", "s (t + eps e)", "s t + eps ((D(s) * e) t)"),
];

fn sum(a: &Arc<Term>, b: &Arc<Term>) -> Term {
    Term::Sum(a.clone(), b.clone())
}
fn app(a: &Arc<Term>, b: &Arc<Term>) -> Term {
    Term::App(a.clone(), b.clone())
}
fn dapp(a: &Arc<Term>, b: &Arc<Term>) -> Term {
    Term::DApp(a.clone(), b.clone())
}
fn eps(a: &Arc<Term>) -> Term {
    Term::Eps(a.clone())
}
fn lam(b: &Binder, body: Term) -> Term {
    Term::Lam(b.clone(), Arc::new(body))
}
fn arc(t: Term) -> Arc<Term> {
    Arc::new(t)
}

/// Applies rule `rule` at the root in the given direction; `filler`
/// supplies the arbitrary subterm a backward zero rule introduces.
pub fn apply_rule(rule: usize, forward: bool, t: &Term, filler: &mut dyn FnMut() -> Term) -> Option<Term> {
    use Term::*;
    let r = match (rule, forward, t) {
        (0, true, Sum(st, e)) => match &**st {
            Sum(s, t) => Sum(s.clone(), arc(sum(t, e))),
            _ => return None,
        },
        (0, false, Sum(s, te)) => match &**te {
            Sum(t, e) => Sum(arc(sum(s, t)), e.clone()),
            _ => return None,
        },
        (1, true, Sum(s, z)) if **z == Zero => (**s).clone(),
        (1, false, _) => Term::sum(t.clone(), Zero),
        (2, _, Sum(s, t)) => sum(t, s),
        (3, true, Eps(z)) if **z == Zero => Zero,
        (3, false, Zero) => Term::eps(Zero),
        (4, true, Eps(st)) => match &**st {
            Sum(s, t) => Term::sum(eps(s), eps(t)),
            _ => return None,
        },
        (4, false, Sum(a, b)) => match (&**a, &**b) {
            (Eps(s), Eps(t)) => Term::eps(sum(s, t)),
            _ => return None,
        },
        (5, true, Lam(_, z)) if **z == Zero => Zero,
        (5, false, Zero) => Term::lam("x", Zero),
        (6, true, Lam(b, st)) => match &**st {
            Sum(s, t) => Term::sum(lam(b, (**s).clone()), lam(b, (**t).clone())),
            _ => return None,
        },
        (6, false, Sum(a, c)) => match (&**a, &**c) {
            (Lam(b, s), Lam(_, t)) => lam(b, sum(s, t)),
            _ => return None,
        },
        (7, true, Lam(b, et)) => match &**et {
            Eps(t) => Term::eps(lam(b, (**t).clone())),
            _ => return None,
        },
        (7, false, Eps(l)) => match &**l {
            Lam(b, t) => lam(b, eps(t)),
            _ => return None,
        },
        (8, true, App(z, _)) if **z == Zero => Zero,
        (8, false, Zero) => Term::app(Zero, filler()),
        (9, true, App(st, e)) => match &**st {
            Sum(s, t) => Term::sum(app(s, e), app(t, e)),
            _ => return None,
        },
        (9, false, Sum(a, b)) => match (&**a, &**b) {
            (App(s, e), App(t, e2)) if e == e2 => App(arc(sum(s, t)), e.clone()),
            _ => return None,
        },
        (10, true, App(es, t)) => match &**es {
            Eps(s) => Term::eps(app(s, t)),
            _ => return None,
        },
        (10, false, Eps(st)) => match &**st {
            App(s, t) => App(arc(eps(s)), t.clone()),
            _ => return None,
        },
        (11, true, DApp(z, _)) if **z == Zero => Zero,
        (11, false, Zero) => Term::dapp(Zero, filler()),
        (12, true, DApp(st, e)) => match &**st {
            Sum(s, t) => Term::sum(dapp(s, e), dapp(t, e)),
            _ => return None,
        },
        (12, false, Sum(a, b)) => match (&**a, &**b) {
            (DApp(s, e), DApp(t, e2)) if e == e2 => DApp(arc(sum(s, t)), e.clone()),
            _ => return None,
        },
        (13, true, DApp(et, e)) => match &**et {
            Eps(t) => Term::eps(dapp(t, e)),
            _ => return None,
        },
        (13, false, Eps(te)) => match &**te {
            DApp(t, e) => DApp(arc(eps(t)), e.clone()),
            _ => return None,
        },
        (14, true, DApp(_, z)) if **z == Zero => Zero,
        (14, false, Zero) => Term::dapp(filler(), Zero),
        (15, true, DApp(s, te)) => match &**te {
            Sum(t, e) => Term::sum(
                Term::sum(dapp(s, t), dapp(s, e)),
                Term::eps(Term::dapp(dapp(s, t), (**e).clone())),
            ),
            _ => return None,
        },
        (15, false, Sum(ab, c)) => match (&**ab, &**c) {
            (Sum(a, b), Eps(d)) => match (&**a, &**b, &**d) {
                (DApp(s, t), DApp(s2, e), DApp(st, e2))
                    if s == s2 && e == e2 && **st == dapp(s, t) =>
                {
                    DApp(s.clone(), arc(sum(t, e)))
                }
                _ => return None,
            },
            _ => return None,
        },
        (16, true, DApp(s, et)) => match &**et {
            Eps(t) => Term::eps(dapp(s, t)),
            _ => return None,
        },
        (16, false, Eps(st)) => match &**st {
            DApp(s, t) => DApp(s.clone(), arc(eps(t))),
            _ => return None,
        },
        (17, _, DApp(st, e)) => match &**st {
            DApp(s, t) => DApp(arc(dapp(s, e)), t.clone()),
            _ => return None,
        },
        (18, true, Eps(inner)) => match &**inner {
            Eps(d) if is_second_differential(d) => (**inner).clone(),
            _ => return None,
        },
        (18, false, Eps(d)) if is_second_differential(d) => Term::eps(t.clone()),
        (19, true, App(s, te)) => match &**te {
            Sum(t, ee) => match &**ee {
                Eps(e) => Term::sum(app(s, t), Term::eps(Term::app(dapp(s, e), (**t).clone()))),
                _ => return None,
            },
            _ => return None,
        },
        (19, false, Sum(a, b)) => match (&**a, &**b) {
            (App(s, t), Eps(c)) => match &**c {
                App(se, t2) if t == t2 => match &**se {
                    DApp(s2, e) if s == s2 => App(s.clone(), arc(Term::sum((**t).clone(), eps(e)))),
                    _ => return None,
                },
                _ => return None,
            },
            _ => return None,
        },
        _ => return None,
    };
    Some(r)
}

fn is_second_differential(t: &Term) -> bool {
    matches!(t, Term::DApp(f, _) if matches!(**f, Term::DApp(..)))
}

/// Every subterm position, without opening binders.
pub fn positions(t: &Term) -> Vec<Vec<PathStep>> {
    fn go(t: &Term, cur: &mut Vec<PathStep>, out: &mut Vec<Vec<PathStep>>) {
        out.push(cur.clone());
        let mut visit = |step, child: &Term, cur: &mut Vec<PathStep>| {
            cur.push(step);
            go(child, cur, out);
            cur.pop();
        };
        match t {
            Term::Var(_) | Term::Zero => {}
            Term::Lam(_, b) | Term::Eps(b) => visit(PathStep::Body, b, cur),
            Term::App(f, a) | Term::DApp(f, a) => {
                visit(PathStep::Fun, f, cur);
                visit(PathStep::Arg, a, cur);
            }
            Term::Sum(l, r) => {
                visit(PathStep::Left, l, cur);
                visit(PathStep::Right, r, cur);
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Replaces the subterm at `path` by `f` of it, if `f` succeeds.
pub fn rewrite_at(t: &Term, path: &[PathStep], f: &mut dyn FnMut(&Term) -> Option<Term>) -> Option<Term> {
    let Some((step, rest)) = path.split_first() else {
        return f(t);
    };
    let sub = |c: &Arc<Term>, f: &mut dyn FnMut(&Term) -> Option<Term>| rewrite_at(c, rest, f).map(Arc::new);
    Some(match (t, step) {
        (Term::Lam(b, body), PathStep::Body) => Term::Lam(b.clone(), sub(body, f)?),
        (Term::Eps(body), PathStep::Body) => Term::Eps(sub(body, f)?),
        (Term::App(a, b), PathStep::Fun) => Term::App(sub(a, f)?, b.clone()),
        (Term::App(a, b), PathStep::Arg) => Term::App(a.clone(), sub(b, f)?),
        (Term::DApp(a, b), PathStep::Fun) => Term::DApp(sub(a, f)?, b.clone()),
        (Term::DApp(a, b), PathStep::Arg) => Term::DApp(a.clone(), sub(b, f)?),
        (Term::Sum(a, b), PathStep::Left) => Term::Sum(sub(a, f)?, b.clone()),
        (Term::Sum(a, b), PathStep::Right) => Term::Sum(a.clone(), sub(b, f)?),
        _ => return None,
    })
}

/// One random rule application in a random context and direction.
pub fn random_rewrite(rng: &mut impl Rng, cfg: &GenConfig, t: &Term) -> Option<Term> {
    let pos = positions(t);
    let pool: Vec<String> = if cfg.closed { Vec::new() } else { cfg.var_pool.clone() };
    for _ in 0..32 {
        let path = pos.choose(rng)?;
        let rule = rng.gen_range(0..EQUIV_RULES.len());
        let forward = rng.gen_bool(0.5);
        let size = rng.gen_range(1..=3);
        let fill = gen_sized_over(rng, &pool, size);
        let mut filler = || fill.clone();
        if let Some(r) = rewrite_at(t, path, &mut |s| apply_rule(rule, forward, s, &mut filler)) {
            return Some(r);
        }
    }
    None
}

/// `(t, t′)` with `t′` obtained from `t` by at most five rule applications.
pub fn gen_equiv_pair(cfg: &GenConfig) -> (Term, Term) {
    let mut rng = cfg.rng();
    let t = gen_term_with(&mut rng, cfg);
    let k = rng.gen_range(0..=5);
    let mut cur = t.clone();
    for _ in 0..k {
        if let Some(next) = random_rewrite(&mut rng, cfg, &cur) {
            cur = next;
        }
    }
    (t, cur)
}
