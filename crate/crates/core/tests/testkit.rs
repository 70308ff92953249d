mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{cheap, p};
use lambda_eps::canonical::diff_eq;
use lambda_eps::reduction::step;
use lambda_eps::syntax::{Binder, Term, Type, Var};
use lambda_eps::testkit::{
    apply_rule, gen_equiv_pair, gen_term, gen_type, gen_typed_term, instance_seed, run_suite, GenConfig, Suite,
    EQUIV_RULES,
};
use lambda_eps::typing::{check, TypingContext};
use proptest::prelude::*;

/// Every closed term of exactly `size` nodes with `depth` enclosing binders.
fn enumerate(size: usize, depth: u32) -> Vec<Term> {
    let mut out = Vec::new();
    if size == 1 {
        out.push(Term::Zero);
        out.extend((0..depth).map(|i| Term::Var(Var::Bound(i))));
        return out;
    }
    for body in enumerate(size - 1, depth) {
        out.push(Term::eps(body));
    }
    for body in enumerate(size - 1, depth + 1) {
        out.push(Term::Lam(Binder::new("x", None), Arc::new(body)));
    }
    for k in 1..size - 1 {
        for l in enumerate(k, depth) {
            for r in enumerate(size - 1 - k, depth) {
                out.push(Term::app(l.clone(), r.clone()));
                out.push(Term::dapp(l.clone(), r.clone()));
                out.push(Term::sum(l.clone(), r.clone()));
            }
        }
    }
    out
}

#[test]
fn size_one_terms() {
    for seed in 0..200 {
        let t = gen_term(&GenConfig::default().with_seed(seed).with_size(1));
        assert!(t == Term::Zero || matches!(t, Term::Var(Var::Free(_))), "{t}");
    }
}

#[test]
fn generation_is_deterministic() {
    let cfg = GenConfig::default().with_seed(42);
    assert_eq!(gen_term(&cfg), gen_term(&cfg));
    assert_eq!(gen_type(&cfg), gen_type(&cfg));
    assert_ne!(instance_seed(1, 0), instance_seed(1, 1));
    assert_eq!(run_suite(Suite::Canonicity, 40, 3, 12), run_suite(Suite::Canonicity, 40, 3, 12));
}

#[test]
fn typed_identity_is_generated() {
    let aa = Type::arrow(Type::base("a"), Type::base("a"));
    let found = (0..400).filter_map(|s| {
        gen_typed_term(&GenConfig::default().with_seed(s).with_size(2).closed(true), &TypingContext::new(), &aa)
    });
    let id = p("\\x. x");
    assert!(found.into_iter().any(|t| t == id));
}

#[test]
fn closed_base_inhabitants_are_covered() {
    let a = Type::base("a");
    let empty = TypingContext::new();
    let inhabitants: BTreeSet<Term> = (1..=3)
        .flat_map(|n| enumerate(n, 0))
        .filter(|t| check(&empty, t, &a))
        .collect();
    let generated: BTreeSet<Term> = (0..3000)
        .filter_map(|s| gen_typed_term(&GenConfig::default().with_seed(s).with_size(3).closed(true), &empty, &a))
        .collect();
    assert!(generated.is_subset(&inhabitants), "{generated:?}");
    assert_eq!(generated, inhabitants);
    // Without constants every closed inhabitant of a base type is built from 0.
    assert!(generated.iter().all(|t| t.free_vars().is_empty() && diff_eq(t, &Term::Zero)));
}

#[test]
fn rule_table_is_sound() {
    for (name, lhs, rhs) in EQUIV_RULES {
        assert!(diff_eq(&p(lhs), &p(rhs)), "{name}");
    }
}

#[test]
fn rules_apply_in_both_directions() {
    for (i, (name, lhs, rhs)) in EQUIV_RULES.iter().enumerate() {
        let (l, r) = (p(lhs), p(rhs));
        let extra: Vec<_> = l.free_vars().difference(&r.free_vars()).cloned().collect();
        let mut filler = || extra.first().map_or(Term::Zero, |n| Term::free(n.clone()));
        assert_eq!(apply_rule(i, true, &l, &mut filler).as_ref(), Some(&r), "{name} forward");
        let back = apply_rule(i, false, &r, &mut filler).unwrap_or_else(|| panic!("{name} backward"));
        assert_eq!(back, l, "{name} backward");
    }
}

#[test]
fn rule_examples() {
    let t = p("f x");
    let mut none = || Term::Zero;
    assert_eq!(apply_rule(1, false, &t, &mut none), Some(p("f x + 0")));
    assert_eq!(apply_rule(6, true, &p("\\x. x + y"), &mut none), Some(p("(\\x. x) + \\x. y")));
    assert_eq!(apply_rule(6, true, &p("\\x. x"), &mut none), None);
}

#[test]
fn zero_rewrites_are_reflexive() {
    let trivial = (0..64).find(|&s| {
        let (t, t2) = gen_equiv_pair(&GenConfig::default().with_seed(s));
        t == t2
    });
    assert!(trivial.is_some());
}

#[test]
fn suite_names_roundtrip() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("nonsense".parse::<Suite>().is_err());
    for name in ["canonicity", "taylor", "regularity", "confluence", "typing", "soundness", "erasure"] {
        assert!(name.parse::<Suite>().is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_size_is_bounded(seed in any::<u64>(), size in 1usize..20) {
        prop_assert!(gen_term(&GenConfig::default().with_seed(seed).with_size(size)).size() <= size);
    }

    #[test]
    fn equiv_pairs_are_equivalent(seed in any::<u64>()) {
        let (t, t2) = gen_equiv_pair(&GenConfig::default().with_seed(seed));
        prop_assume!(cheap(&[&t, &t2]));
        prop_assert!(diff_eq(&t, &t2), "{} vs {}", t, t2);
    }

    #[test]
    fn typed_terms_check_and_reduce_safely(seed in any::<u64>()) {
        let cfg = GenConfig::default().with_seed(seed).closed(true);
        let ty = gen_type(&cfg);
        let empty = TypingContext::new();
        if let Some(t) = gen_typed_term(&cfg, &empty, &ty) {
            prop_assert!(check(&empty, &t, &ty));
            prop_assert!(t.size() <= cfg.max_size);
            for s in step(&t).successors {
                prop_assert!(check(&empty, &s.term, &ty), "{} ⇒ {}", t, s.term);
            }
        }
    }
}
