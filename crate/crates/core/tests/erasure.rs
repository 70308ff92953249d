mod common;

use common::{cheap, p, tame_term};
use lambda_eps::canonical::diff_eq;
use lambda_eps::erasure::{erase, erase_simulates, erased_eq, SimulationError};
use lambda_eps::subst::{dsubst, subst};
use lambda_eps::syntax::Term;
use lambda_eps::testkit::{gen_equiv_pair, gen_term, run_instance, GenConfig, Outcome, Suite};
use proptest::prelude::*;

fn pool(names: &[&str], seed: u64, size: usize) -> Term {
    let mut cfg = GenConfig::default().with_seed(seed).with_size(size);
    cfg.var_pool = names.iter().map(|s| s.to_string()).collect();
    gen_term(&cfg)
}

#[test]
fn erase_examples() {
    assert_eq!(erase(&p("eps t")), Term::Zero);
    assert_eq!(erase(&p("D(s) * t")), p("D(s) * t"));
    assert_eq!(erase(&p("D(eps s) * (t + eps u)")), p("D(0) * (t + 0)"));
    assert_eq!(erase(&p("x + eps y")), p("x + 0"));
    assert_eq!(erase(&p("\\x. x + eps x")), p("\\x. x + 0"));
}

#[test]
fn erased_equivalence_is_linear_in_derivatives() {
    let l = p("D(s) * (t + e)");
    let r = p("D(s) * t + D(s) * e");
    assert!(!diff_eq(&l, &r));
    assert!(erased_eq(&l, &r));
    assert!(erased_eq(&p("x + eps y"), &p("x")));
    assert!(!erased_eq(&p("s (t + e)"), &p("s t + s e")));
    assert!(!erased_eq(&p("x"), &p("y")));
}

#[test]
fn simulation_examples() {
    assert_eq!(erase_simulates(&p("(\\x. x) 0"), &Term::Zero, 3), Ok(true));
    assert_eq!(erase_simulates(&p("D(\\x. x) * u"), &p("\\x. u"), 1), Ok(true));
    assert_eq!(erase_simulates(&p("eps ((\\x. x) y)"), &p("eps y"), 0), Ok(true));
    assert_eq!(erase_simulates(&p("x"), &p("y"), 3), Err(SimulationError::NotAStep));
}

#[test]
fn simulation_needs_several_steps_when_eps_duplicates() {
    // D(λx. x x)·u fires into a term whose erased image needs its own steps.
    let s = p("(D(\\x. x x) * u) w");
    let s2 = step_first(&s);
    assert_eq!(erase_simulates(&s, &s2, 8), Ok(true));
}

fn step_first(t: &Term) -> Term {
    lambda_eps::reduction::step(t).successors[0].term.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn erasure_is_eps_free_and_idempotent(t in tame_term(14)) {
        let e = erase(&t);
        prop_assert!(!e.contains_eps());
        prop_assert!(e.free_vars().is_subset(&t.free_vars()));
        prop_assert_eq!(erase(&e), e);
    }

    #[test]
    fn erasure_respects_equivalence(seed in any::<u64>()) {
        let (t, t2) = gen_equiv_pair(&GenConfig::default().with_seed(seed).with_size(10));
        let (e, e2) = (erase(&t), erase(&t2));
        prop_assume!(cheap(&[&e, &e2]));
        prop_assert!(erased_eq(&e, &e2), "{} vs {}", e, e2);
        prop_assert!(erased_eq(&t, &t2));
    }

    #[test]
    fn erasure_commutes_with_substitution(a in any::<u64>(), b in any::<u64>()) {
        let s = pool(&["x", "y", "z"], a, 10);
        let t = pool(&["y", "z"], b, 4);
        let l = erase(&subst(&s, "x", &t));
        let r = subst(&erase(&s), "x", &erase(&t));
        prop_assume!(cheap(&[&l, &r]));
        prop_assert!(diff_eq(&l, &r));
    }

    #[test]
    fn erasure_commutes_with_differential_substitution(a in any::<u64>(), b in any::<u64>()) {
        let s = pool(&["x", "y", "z"], a, 8);
        let t = pool(&["y", "z"], b, 4);
        let l = erase(&dsubst(&s, "x", &t).unwrap());
        let r = erase(&dsubst(&erase(&s), "x", &erase(&t)).unwrap());
        prop_assume!(cheap(&[&l, &r]));
        prop_assert!(diff_eq(&l, &r));
    }

    #[test]
    fn erased_steps_are_simulated(seed in any::<u64>()) {
        let out = run_instance(Suite::Erasure, &GenConfig::default().with_seed(seed));
        prop_assert!(!matches!(out, Outcome::Fail(_)), "{:?}", out);
    }
}
