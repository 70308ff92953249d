mod common;

use common::{cheap, p};
use lambda_eps::canonical::diff_eq;
use lambda_eps::subst::{dsubst, dsubst_seq, subst, taylor_rhs, SubstError};
use lambda_eps::syntax::{alpha_eq, Term, Var};
use lambda_eps::testkit::{gen_equiv_pair, gen_term, GenConfig};
use proptest::prelude::*;

fn pool(names: &[&str]) -> GenConfig {
    let mut cfg = GenConfig::default();
    cfg.var_pool = names.iter().map(|s| s.to_string()).collect();
    cfg
}

fn gen(names: &[&str], seed: u64, size: usize) -> Term {
    gen_term(&pool(names).with_seed(seed).with_size(size))
}

/// Textbook substitution on λ-free terms.
fn oracle_subst(t: &Term, x: &str, s: &Term) -> Term {
    match t {
        Term::Var(Var::Free(n)) if &**n == x => s.clone(),
        Term::Var(_) | Term::Zero => t.clone(),
        Term::App(a, b) => Term::app(oracle_subst(a, x, s), oracle_subst(b, x, s)),
        Term::DApp(a, b) => Term::dapp(oracle_subst(a, x, s), oracle_subst(b, x, s)),
        Term::Eps(a) => Term::eps(oracle_subst(a, x, s)),
        Term::Sum(a, b) => Term::sum(oracle_subst(a, x, s), oracle_subst(b, x, s)),
        Term::Lam(..) => unreachable!("oracle covers λ-free terms"),
    }
}

/// Differential substitution on λ-free terms, clause by clause.
fn oracle_dsubst(t: &Term, x: &str, s: &Term) -> Term {
    let moved = |e: &Term| oracle_subst(e, x, &Term::sum(Term::var(x), Term::eps(s.clone())));
    match t {
        Term::Var(Var::Free(n)) if &**n == x => s.clone(),
        Term::Var(_) | Term::Zero => Term::Zero,
        Term::App(f, e) => Term::sum(
            Term::app(Term::dapp((**f).clone(), oracle_dsubst(e, x, s)), (**e).clone()),
            Term::app(oracle_dsubst(f, x, s), moved(e)),
        ),
        Term::DApp(f, e) => {
            let de = oracle_dsubst(e, x, s);
            Term::sum(
                Term::sum(Term::dapp((**f).clone(), de.clone()), Term::dapp(oracle_dsubst(f, x, s), moved(e))),
                Term::eps(Term::dapp(Term::dapp((**f).clone(), (**e).clone()), de)),
            )
        }
        Term::Eps(a) => Term::eps(oracle_dsubst(a, x, s)),
        Term::Sum(a, b) => Term::sum(oracle_dsubst(a, x, s), oracle_dsubst(b, x, s)),
        Term::Lam(..) => unreachable!("oracle covers λ-free terms"),
    }
}

fn lam_free() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(4, 14, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::app(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::dapp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::sum(a, b)),
            inner.prop_map(Term::eps),
        ]
    })
}

#[test]
fn subst_examples() {
    assert_eq!(subst(&p("x"), "x", &p("s")), p("s"));
    let r = subst(&p("\\y. x"), "x", &p("y"));
    assert!(alpha_eq(&r, &p("\\w. y")));
    assert_eq!(r.to_string(), "\\y'. y");
    assert_eq!(subst(&p("D(t) * e"), "t", &p("s")), p("D(s) * e"));
    assert_eq!(subst(&p("D(x y) * (x + eps x)"), "x", &p("s")), p("D(s y) * (s + eps s)"));
}

#[test]
fn dsubst_examples() {
    assert_eq!(dsubst(&p("x"), "x", &p("u")).unwrap(), p("u"));
    assert_eq!(dsubst(&p("y"), "x", &p("u")).unwrap(), Term::Zero);
    let xx = dsubst(&p("x x"), "x", &p("u")).unwrap();
    assert_eq!(xx, p("D(x) * u x + u (x + eps u)"));
    assert!(diff_eq(&xx, &oracle_dsubst(&p("x x"), "x", &p("u"))));
}

#[test]
fn dsubst_under_binders() {
    let r = dsubst(&p("\\y. x y"), "x", &p("u")).unwrap();
    assert!(diff_eq(&r, &p("\\y. D(x) * 0 y + u y")));
    assert!(alpha_eq(&dsubst(&p("\\x. x"), "x", &p("u")).unwrap(), &p("\\x. 0")));
}

#[test]
fn dsubst_rejects_free_argument() {
    assert_eq!(dsubst(&p("x"), "x", &p("x")), Err(SubstError::FreeInArgument("x".into())));
}

#[test]
fn dsubst_seq_examples() {
    assert_eq!(dsubst_seq(&p("t"), &[], &[]).unwrap(), p("t"));
    let two = dsubst_seq(&p("x"), &["x", "x"], &[p("u"), p("v")]).unwrap();
    assert_eq!(two, dsubst(&p("u"), "x", &p("v")).unwrap());
    assert_eq!(two, Term::Zero);
    assert_eq!(dsubst_seq(&p("x x"), &["x"], &[p("u")]).unwrap(), dsubst(&p("x x"), "x", &p("u")).unwrap());
    assert!(matches!(dsubst_seq(&p("x"), &["x"], &[]), Err(SubstError::ArityMismatch { .. })));
}

#[test]
fn taylor_examples() {
    assert!(diff_eq(&taylor_rhs(&p("x"), "x", &p("t"), &p("e")).unwrap(), &p("t + eps e")));
    assert!(diff_eq(&taylor_rhs(&p("y"), "x", &p("t"), &p("e")).unwrap(), &p("y")));
    let rhs = taylor_rhs(&p("x x"), "x", &p("t"), &p("e")).unwrap();
    let by_hand = p("t t + eps ((D(t) * e t) + e (t + eps e))");
    assert!(diff_eq(&rhs, &by_hand));
    assert!(diff_eq(&rhs, &subst(&p("x x"), "x", &p("t + eps e"))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn subst_matches_oracle(t in lam_free(), s in lam_free()) {
        prop_assert_eq!(subst(&t, "x", &s), oracle_subst(&t, "x", &s));
    }

    #[test]
    fn dsubst_matches_oracle(t in lam_free(), s in lam_free()) {
        let s = subst(&s, "x", &Term::var("u"));
        prop_assert_eq!(dsubst(&t, "x", &s).unwrap(), oracle_dsubst(&t, "x", &s));
    }

    #[test]
    fn substitutions_respect_equivalence(a in any::<u64>(), b in any::<u64>()) {
        let (t, t2) = gen_equiv_pair(&pool(&["x", "y", "z"]).with_seed(a).with_size(8));
        let (s, s2) = gen_equiv_pair(&pool(&["y", "z"]).with_seed(b).with_size(5));
        let l = subst(&t, "x", &s);
        let r = subst(&t2, "x", &s2);
        let dl = dsubst(&t, "x", &s).unwrap();
        let dr = dsubst(&t2, "x", &s2).unwrap();
        prop_assume!(cheap(&[&l, &r, &dl, &dr]));
        prop_assert!(diff_eq(&l, &r));
        prop_assert!(diff_eq(&dl, &dr));
    }

    #[test]
    fn vacuous_dsubst_is_zero(a in any::<u64>(), b in any::<u64>()) {
        let t = gen(&["y", "z"], a, 10);
        let u = gen(&["y", "z", "u"], b, 4);
        let d = dsubst(&t, "x", &u).unwrap();
        prop_assume!(cheap(&[&d]));
        prop_assert!(diff_eq(&d, &Term::Zero));
    }

    #[test]
    fn second_derivatives_commute(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let t = gen(&["x", "y", "z"], a, 8);
        let u = gen(&["y", "u"], b, 3);
        let v = gen(&["z", "v"], c, 3);
        let l = dsubst_seq(&t, &["x", "x"], &[u.clone(), v.clone()]).unwrap();
        let r = dsubst_seq(&t, &["x", "x"], &[v, u]).unwrap();
        prop_assume!(cheap(&[&l, &r]));
        prop_assert!(diff_eq(&l, &r));
    }

    #[test]
    fn taylor_expansion(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let s = gen(&["x", "y", "z"], a, 10);
        let t = gen(&["x", "y", "z"], b, 4);
        let e = gen(&["y", "z"], c, 4);
        let l = subst(&s, "x", &Term::sum(t.clone(), Term::eps(e.clone())));
        let r = taylor_rhs(&s, "x", &t, &e).unwrap();
        prop_assume!(cheap(&[&l, &r]));
        prop_assert!(diff_eq(&l, &r));
    }

    #[test]
    fn dsubst_is_regular(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let s = gen(&["x", "y", "z"], a, 8);
        let u = gen(&["y", "z"], b, 3);
        let v = gen(&["y", "u"], c, 3);
        prop_assert!(diff_eq(&dsubst(&s, "x", &Term::Zero).unwrap(), &Term::Zero));
        let l = dsubst(&s, "x", &Term::sum(u.clone(), v.clone())).unwrap();
        let moved = subst(&dsubst(&s, "x", &v).unwrap(), "x", &Term::sum(Term::var("x"), Term::eps(u.clone())));
        let r = Term::sum(dsubst(&s, "x", &u).unwrap(), moved);
        prop_assume!(cheap(&[&l, &r]));
        prop_assert!(diff_eq(&l, &r));
    }

    #[test]
    fn substitution_exchange(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let t = gen(&["x", "y", "z"], a, 8);
        let u = gen(&["y", "z"], b, 3);
        let v = gen(&["y", "z", "u"], c, 3);
        let l = subst(&dsubst(&t, "x", &u).unwrap(), "y", &v);
        let r = dsubst(&subst(&t, "y", &v), "x", &subst(&u, "y", &v)).unwrap();
        prop_assume!(cheap(&[&l, &r]));
        prop_assert!(diff_eq(&l, &r));
    }

    #[test]
    fn second_exchange(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let t = gen(&["x", "y", "z"], a, 7);
        let u = gen(&["z", "u"], b, 3);
        let v = gen(&["x", "z"], c, 3);
        let l = dsubst(&subst(&t, "y", &v), "x", &u).unwrap();
        let shifted = subst(&v, "x", &Term::sum(Term::var("x"), Term::eps(u.clone())));
        let first = subst(&dsubst(&t, "x", &u).unwrap(), "y", &shifted);
        let inner = dsubst(&v, "x", &u).unwrap();
        let second = subst(&dsubst(&t, "y", &inner).unwrap(), "y", &v);
        let r = Term::sum(first, second);
        prop_assume!(cheap(&[&l, &r]));
        prop_assert!(diff_eq(&l, &r), "t={} u={} v={}", t, u, v);
    }
}
