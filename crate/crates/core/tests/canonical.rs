mod common;

use common::{cheap, p, tame_term};
use lambda_eps::canonical::{
    ap, canonical_cost, canonical_len, canonicalize, cansum, d_star, diff_eq, embed, eps_star, is_well_formed,
    normal_canon, perm_eq, perm_normalize, pri, reg, tan, Additive, Basic, Canonical, Summand,
};
use lambda_eps::syntax::{Term, Var};
use lambda_eps::testkit::{gen_equiv_pair, random_rewrite, GenConfig};
use proptest::prelude::*;

fn v(name: &str) -> Basic {
    Basic::var(name)
}

fn d(s: Basic, t: Basic) -> Basic {
    Basic::dapp(s, t)
}

fn sum_of(items: &[(u32, Basic)]) -> Canonical {
    Canonical::from_summands(items.iter().map(|(k, b)| Summand::new(*k, b.clone())))
}

fn c(src: &str) -> Canonical {
    canonicalize(&p(src))
}

const GOLDEN: &str = include_str!("golden/canon_example.txt");

#[test]
fn cansum_examples() {
    let t = sum_of(&[(0, v("x")), (1, v("y"))]);
    assert_eq!(cansum(&Canonical::zero(), &t), t);
    assert_eq!(cansum(&t, &Canonical::zero()), t);
    let xy = sum_of(&[(0, v("x")), (0, v("y"))]);
    let z = sum_of(&[(0, v("z"))]);
    assert_eq!(embed(&cansum(&xy, &z)), p("x + (y + z)"));
}

#[test]
fn eps_star_examples() {
    assert_eq!(eps_star(&sum_of(&[(0, v("x"))])), sum_of(&[(1, v("x"))]));
    let second = d(d(v("u"), v("v")), v("w"));
    let t = sum_of(&[(1, second)]);
    assert_eq!(eps_star(&t), t);
    assert_eq!(eps_star(&sum_of(&[(0, v("x")), (1, v("y"))])), sum_of(&[(1, v("x")), (2, v("y"))]));
}

#[test]
fn d_star_examples() {
    assert_eq!(d_star(&Canonical::zero(), &v("t")), Canonical::zero());
    assert_eq!(d_star(&sum_of(&[(1, v("u"))]), &v("v")), sum_of(&[(1, d(v("u"), v("v")))]));
    assert_eq!(
        d_star(&sum_of(&[(0, v("u")), (0, v("v"))]), &v("w")),
        sum_of(&[(0, d(v("u"), v("w"))), (0, d(v("v"), v("w")))])
    );
}

#[test]
fn pri_examples() {
    assert_eq!(pri(&Canonical::zero()), Additive::zero());
    assert_eq!(pri(&sum_of(&[(0, v("x")), (1, v("y"))])), Additive(vec![v("x")]));
    assert_eq!(pri(&sum_of(&[(1, v("y"))])), Additive::zero());
}

#[test]
fn tan_examples() {
    assert_eq!(tan(&Canonical::zero()), Canonical::zero());
    assert_eq!(tan(&sum_of(&[(0, v("x"))])), Canonical::zero());
    let t = sum_of(&[(0, v("x")), (1, v("y"))]);
    assert_eq!(tan(&t), sum_of(&[(0, v("y"))]));
}

#[test]
fn tan_must_decrement_exponents() {
    // T ∼ pri(T) + ε tan(T) holds only for the decremented reading.
    let t = sum_of(&[(0, v("x")), (1, v("y")), (2, v("z"))]);
    let rebuilt = Term::sum(pri(&t).to_term(), Term::eps(embed(&tan(&t))));
    assert!(diff_eq(&embed(&t), &rebuilt));
    let undecremented = Canonical::from_summands(t.summands().iter().filter(|s| s.exponent() > 0).cloned());
    let wrong = Term::sum(pri(&t).to_term(), Term::eps(embed(&undecremented)));
    assert!(!diff_eq(&embed(&t), &wrong));
}

#[test]
fn ap_examples() {
    let arg = Additive(vec![v("v")]);
    assert_eq!(ap(&Canonical::zero(), &arg), Canonical::zero());
    assert_eq!(ap(&sum_of(&[(1, v("u"))]), &arg), sum_of(&[(1, Basic::app(v("u"), arg.clone()))]));
    assert_eq!(
        ap(&sum_of(&[(0, v("u")), (0, v("w"))]), &arg),
        sum_of(&[(0, Basic::app(v("u"), arg.clone())), (0, Basic::app(v("w"), arg.clone()))])
    );
}

#[test]
fn reg_examples() {
    assert_eq!(reg(&v("u"), &Canonical::zero()), Canonical::zero());
    assert_eq!(reg(&v("u"), &sum_of(&[(0, v("x"))])), sum_of(&[(0, d(v("u"), v("x")))]));
    let r = reg(&v("u"), &c("x + y + eps z"));
    assert!(perm_eq(&r, &c(GOLDEN.trim())));
}

#[test]
fn golden_canonical_form() {
    let golden = c(GOLDEN.trim());
    let out = c("D(u) * (x + y + eps z)");
    assert!(perm_eq(&out, &golden));
    assert!(is_well_formed(&out));
    // The transcription carries unsaturated ε powers on second differentials.
    assert!(GOLDEN.contains("eps (D(D(u) * z) * y"));
}

#[test]
fn golden_has_seven_distinct_summands() {
    // D(u)·x, D(u)·y, εD(u)·z and the four cross terms; the ε³ term of the
    // transcription collapses onto ε under absorption.
    let out = normal_canon(&p("D(u) * (x + y + eps z)"));
    assert_eq!(out.len(), 7);
    assert_eq!(out.summands().iter().filter(|s| s.exponent() == 0).count(), 2);
}

#[test]
fn canonicalize_examples() {
    assert_eq!(c("x + 0"), sum_of(&[(0, v("x"))]));
    assert_eq!(c("(eps u) v"), sum_of(&[(1, Basic::app(v("u"), Additive(vec![v("v")])))]));
    assert_eq!(c("0 x"), Canonical::zero());
    assert_eq!(c("\\x. 0"), Canonical::zero());
}

#[test]
fn perm_normalize_examples() {
    assert_eq!(perm_normalize(&c("y + x")), c("x + y"));
    assert_eq!(perm_normalize(&c("D(D(u) * y) * x")), c("D(D(u) * x) * y"));
    assert_eq!(perm_normalize(&Canonical::zero()), Canonical::zero());
}

#[test]
fn perm_eq_examples() {
    assert!(perm_eq(&c("x + (y + z)"), &c("y + (x + z)")));
    assert!(!perm_eq(&c("x"), &c("y")));
    assert!(perm_eq(&c("D(D(u) * v) * w"), &c("D(D(u) * w) * v")));
}

#[test]
fn diff_eq_examples() {
    assert!(diff_eq(&p("s + t"), &p("t + s")));
    assert!(diff_eq(&p("\\x. 0"), &p("0")));
    assert!(!diff_eq(&p("x"), &p("y")));
    assert!(diff_eq(&p("eps eps D(D(s) * t) * e"), &p("eps D(D(s) * t) * e")));
    assert!(!diff_eq(&p("eps eps x"), &p("eps x")));
}

#[test]
fn embed_examples() {
    assert_eq!(embed(&Canonical::zero()), Term::Zero);
    assert_eq!(embed(&sum_of(&[(1, v("x"))])), Term::eps(Term::var("x")));
    assert_eq!(
        embed(&sum_of(&[(0, v("x")), (2, v("y"))])),
        Term::sum(Term::var("x"), Term::eps(Term::eps(Term::var("y"))))
    );
}

#[test]
fn bound_variables_stay_bound() {
    let t = c("\\x. x");
    assert!(matches!(t.summands()[0].body(), Basic::Lam(_, b) if **b == Basic::Var(Var::Bound(0))));
}

#[test]
fn size_predictor_examples() {
    assert_eq!(canonical_len(&p("D(u) * (x + y + eps z)")), 7.0);
    assert_eq!(canonical_len(&p("0")), 0.0);
    assert!(canonical_cost(&p("D(u) * (x + y + eps z)")) >= 7.0);
}

fn contexts(hole: &Term, other: &Term) -> Vec<Term> {
    vec![
        Term::lam("x", hole.clone()),
        Term::app(hole.clone(), other.clone()),
        Term::app(other.clone(), hole.clone()),
        Term::dapp(hole.clone(), other.clone()),
        Term::dapp(other.clone(), hole.clone()),
        Term::eps(hole.clone()),
        Term::sum(hole.clone(), other.clone()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn embedding_the_canonical_form_is_equivalent(t in tame_term(12)) {
        prop_assert!(diff_eq(&embed(&canonicalize(&t)), &t));
    }

    #[test]
    fn canonicalize_inverts_embed(t in tame_term(12)) {
        let c = canonicalize(&t);
        prop_assert_eq!(canonicalize(&embed(&c)), c);
    }

    #[test]
    fn canonical_length_is_predicted(t in tame_term(12)) {
        prop_assert_eq!(canonical_len(&t), canonicalize(&t).len() as f64);
    }

    #[test]
    fn single_rewrites_are_equivalences(seed in any::<u64>()) {
        let cfg = GenConfig::default().with_seed(seed);
        let mut rng = cfg.rng();
        let t = lambda_eps::testkit::gen_term_with(&mut rng, &cfg);
        if let Some(t2) = random_rewrite(&mut rng, &cfg, &t) {
            prop_assume!(cheap(&[&t, &t2]));
            prop_assert!(diff_eq(&t, &t2), "{} vs {}", t, t2);
        }
    }

    #[test]
    fn perm_normalize_is_idempotent(t in tame_term(12)) {
        let n = normal_canon(&t);
        prop_assert_eq!(perm_normalize(&n), n);
    }

    #[test]
    fn perm_normalize_ignores_summand_order(t in tame_term(12), rot in 0usize..8) {
        let c = canonicalize(&t);
        let mut items = c.summands().to_vec();
        if !items.is_empty() {
            let k = rot % items.len();
            items.rotate_left(k);
        }
        items.reverse();
        prop_assert_eq!(perm_normalize(&Canonical::from_summands(items)), perm_normalize(&c));
    }

    #[test]
    fn outputs_are_well_formed(t in tame_term(12)) {
        prop_assert!(is_well_formed(&canonicalize(&t)));
    }

    #[test]
    fn canonicalization_is_compositional(s in tame_term(6), t in tame_term(6)) {
        let (es, et) = (embed(&canonicalize(&s)), embed(&canonicalize(&t)));
        for (raw, pre) in [
            (Term::sum(s.clone(), t.clone()), Term::sum(es.clone(), et.clone())),
            (Term::eps(t.clone()), Term::eps(et.clone())),
            (Term::app(s.clone(), t.clone()), Term::app(es.clone(), et.clone())),
            (Term::dapp(s.clone(), t.clone()), Term::dapp(es.clone(), et.clone())),
        ] {
            prop_assume!(cheap(&[&raw]));
            prop_assert_eq!(canonicalize(&pre), canonicalize(&raw));
        }
    }

    #[test]
    fn diff_eq_is_an_equivalence(seed in any::<u64>()) {
        let cfg = GenConfig::default().with_seed(seed).with_size(10);
        let (a, b) = gen_equiv_pair(&cfg);
        let mut rng = cfg.rng();
        let c2 = random_rewrite(&mut rng, &cfg, &b).unwrap_or_else(|| b.clone());
        prop_assume!(cheap(&[&a, &b, &c2]));
        prop_assert!(diff_eq(&a, &a));
        prop_assert_eq!(diff_eq(&a, &b), diff_eq(&b, &a));
        prop_assert!(diff_eq(&a, &b) && diff_eq(&b, &c2) && diff_eq(&a, &c2));
    }

    #[test]
    fn diff_eq_is_contextual(seed in any::<u64>(), other in tame_term(4)) {
        let (a, b) = gen_equiv_pair(&GenConfig::default().with_seed(seed).with_size(8));
        for (ca, cb) in contexts(&a, &other).into_iter().zip(contexts(&b, &other)) {
            prop_assume!(cheap(&[&ca, &cb]));
            prop_assert!(diff_eq(&ca, &cb), "{} vs {}", ca, cb);
        }
    }

    #[test]
    fn distinct_normal_forms_are_inequivalent(s in tame_term(10), t in tame_term(10)) {
        prop_assert_eq!(diff_eq(&s, &t), normal_canon(&s) == normal_canon(&t));
    }
}
