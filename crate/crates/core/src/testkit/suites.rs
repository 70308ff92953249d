use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use super::gen::{gen_sized_over, gen_term_with, gen_type_with, gen_typed_term_with, instance_seed, GenConfig};
use super::rewrite::{gen_equiv_pair, random_rewrite};
use crate::canonical::{canonical_cost, canonicalize, diff_eq, embed, normal_canon, Canonical};
use crate::erasure::{erase, erase_simulates};
use crate::model::{all_envs, eval, ModelConfig, ModelError};
use crate::reduction::{fpr, is_canonical_value, normalize, par_reducts, redex_variants, step, wf_step, DEFAULT_FUEL};
use crate::subst::{dsubst, dsubst_seq, subst, taylor_rhs};
use crate::syntax::{Term, Type};
use crate::typing::{check, TypingContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Canonicity,
    Taylor,
    Regularity,
    Commutation,
    Confluence,
    Typing,
    Soundness,
    Erasure,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Canonicity,
        Suite::Taylor,
        Suite::Regularity,
        Suite::Commutation,
        Suite::Confluence,
        Suite::Typing,
        Suite::Soundness,
        Suite::Erasure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Canonicity => "canonicity",
            Suite::Taylor => "taylor",
            Suite::Regularity => "regularity",
            Suite::Commutation => "commutation",
            Suite::Confluence => "confluence",
            Suite::Typing => "typing",
            Suite::Soundness => "soundness",
            Suite::Erasure => "erasure",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Outcome of one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// No admissible instance could be drawn from the seed.
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Up to ten failure descriptions, in instance order.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn is_clean(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} passed, {} failed, {} skipped (seed {})",
            self.suite, self.passed, self.failed, self.skipped, self.seed
        )?;
        for msg in &self.failures {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

/// Runs `count` seeded instances of a suite in parallel; `size` bounds
/// generated terms.
pub fn run_suite(suite: Suite, count: usize, seed: u64, size: usize) -> SuiteReport {
    let base = GenConfig::default().with_size(size);
    let outcomes: Vec<Outcome> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let cfg = base.with_seed(instance_seed(seed, i));
            let out = run_instance(suite, &cfg);
            match out {
                Outcome::Fail(msg) => Outcome::Fail(format!("#{i}: {msg}")),
                o => o,
            }
        })
        .collect();
    let mut report = SuiteReport {
        suite,
        seed,
        passed: 0,
        failed: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for o in outcomes {
        match o {
            Outcome::Pass => report.passed += 1,
            Outcome::Skip => report.skipped += 1,
            Outcome::Fail(msg) => {
                report.failed += 1;
                if report.failures.len() < 10 {
                    report.failures.push(msg);
                }
            }
        }
    }
    report
}

/// Largest canonical summand count a suite instance may meet; draws
/// beyond it are replaced by fresh ones from the same seed.
pub const CANON_BUDGET: f64 = 2048.0;

const DRAWS: usize = 32;

/// Runs one instance, redrawing inadmissible candidates.
pub fn run_instance(suite: Suite, cfg: &GenConfig) -> Outcome {
    let draw: fn(&mut ChaCha8Rng, &GenConfig) -> Option<Outcome> = match suite {
        Suite::Canonicity => canonicity,
        Suite::Taylor => taylor,
        Suite::Regularity => regularity,
        Suite::Commutation => commutation,
        Suite::Confluence => confluence,
        Suite::Typing => typing,
        Suite::Soundness => soundness,
        Suite::Erasure => erasure,
    };
    let draws = match suite {
        Suite::Confluence => 4 * DRAWS,
        _ => DRAWS,
    };
    let mut rng = cfg.rng();
    (0..draws)
        .find_map(|_| draw(&mut rng, cfg))
        .unwrap_or(Outcome::Skip)
}

/// Every term is cheap to canonicalize.
pub fn tame<'a>(terms: impl IntoIterator<Item = &'a Term>) -> bool {
    terms.into_iter().all(|t| canonical_cost(t) <= CANON_BUDGET)
}

fn pass_if(ok: bool, what: &str, terms: &[&Term]) -> Option<Outcome> {
    Some(if ok { Outcome::Pass } else { fail(what, terms) })
}

fn fail(what: &str, terms: &[&Term]) -> Outcome {
    let shown: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    Outcome::Fail(format!("{what}: {}", shown.join("  |  ")))
}

fn pool_without(cfg: &GenConfig, x: &str) -> Vec<String> {
    cfg.var_pool.iter().filter(|v| *v != x).cloned().collect()
}

fn pick_var(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> String {
    cfg.var_pool.choose(rng).cloned().unwrap_or_else(|| "x".into())
}

fn small(rng: &mut ChaCha8Rng, pool: &[String], size: usize) -> Term {
    let n = rng.gen_range(1..=size.max(1));
    gen_sized_over(rng, pool, n)
}

/// Rewrite-perturbed pairs are equivalent; independent pairs with
/// distinct normal forms are not.
fn canonicity(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Option<Outcome> {
    let (t, t2) = gen_equiv_pair(&cfg.with_seed(rng.gen()));
    let a = gen_term_with(rng, cfg);
    let b = gen_term_with(rng, cfg);
    if !tame([&t, &t2, &a, &b]) {
        return None;
    }
    if !diff_eq(&t, &t2) {
        return Some(fail("rewritten pair judged inequivalent", &[&t, &t2]));
    }
    if normal_canon(&a) == normal_canon(&b) {
        return None;
    }
    pass_if(!diff_eq(&a, &b) && !diff_eq(&b, &a), "distinct normal forms judged equivalent", &[&a, &b])
}

fn taylor(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Option<Outcome> {
    let size = cfg.max_size.min(10);
    let s = gen_term_with(rng, &cfg.with_size(size));
    let x = pick_var(rng, cfg);
    let t = small(rng, &cfg.var_pool, size / 2);
    let e = small(rng, &pool_without(cfg, &x), size / 2);
    let lhs = subst(&s, &x, &Term::sum(t.clone(), Term::eps(e.clone())));
    let rhs = taylor_rhs(&s, &x, &t, &e).expect("e avoids x");
    if !tame([&lhs, &rhs]) {
        return None;
    }
    pass_if(diff_eq(&lhs, &rhs), "taylor expansion", &[&s, &Term::var(&x), &t, &e])
}

fn regularity(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Option<Outcome> {
    let s = gen_term_with(rng, cfg);
    let x = pick_var(rng, cfg);
    let pool = pool_without(cfg, &x);
    let u = small(rng, &pool, 4);
    let v = small(rng, &pool, 4);
    let d = |a: &Term| dsubst(&s, &x, a).expect("argument avoids x");
    let at_zero = d(&Term::Zero);
    let lhs = d(&Term::sum(u.clone(), v.clone()));
    let shifted = Term::sum(Term::var(&x), Term::eps(u.clone()));
    let rhs = Term::sum(d(&u), subst(&d(&v), &x, &shifted));
    if !tame([&at_zero, &lhs, &rhs]) {
        return None;
    }
    if !diff_eq(&at_zero, &Term::Zero) {
        return Some(fail("derivative along 0", &[&s, &Term::var(&x)]));
    }
    pass_if(diff_eq(&lhs, &rhs), "derivative along a sum", &[&s, &Term::var(&x), &u, &v])
}

fn commutation(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Option<Outcome> {
    let t = gen_term_with(rng, cfg);
    let x = pick_var(rng, cfg);
    let pool = pool_without(cfg, &x);
    let u = small(rng, &pool, 4);
    let v = small(rng, &pool, 4);
    let xs = [x.as_str(), x.as_str()];
    let a = dsubst_seq(&t, &xs, &[u.clone(), v.clone()]).expect("arguments avoid x");
    let b = dsubst_seq(&t, &xs, &[v.clone(), u.clone()]).expect("arguments avoid x");
    if !tame([&a, &b]) {
        return None;
    }
    pass_if(diff_eq(&a, &b), "second derivatives differ", &[&t, &Term::var(&x), &u, &v])
}

const FALLBACK_SIZE: usize = 160;
const NORMAL_SIZE: usize = 320;
const FALLBACK_REDEXES: usize = 6;

fn redex_count(t: &Term) -> usize {
    step(t).successors.len()
}

/// Every well-formed successor parallel-reduces to a term equivalent to
/// the full parallel reduct, which therefore joins every pair.
fn confluence(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Option<Outcome> {
    let t = gen_term_with(rng, cfg);
    if !tame([&t]) {
        return None;
    }
    let n = normal_canon(&t);
    if embed(&n).size() > NORMAL_SIZE {
        return None;
    }
    let variants: Vec<Term> = redex_variants(&n).iter().map(|v| fpr(&embed(v))).collect();
    if !tame(&variants) {
        return None;
    }
    let succs: Vec<Term> = wf_step(&t).iter().map(embed).collect();
    if succs.len() < 2 || !tame(&succs) {
        return None;
    }
    let target = &variants[0];
    for other in &variants[1..] {
        if !diff_eq(other, target) {
            return Some(fail("full parallel reducts of variants differ", &[&t, target, other]));
        }
    }
    for e in &succs {
        let fe = fpr(e);
        if !tame([&fe]) {
            return None;
        }
        if diff_eq(&fe, target) || diff_eq(e, target) {
            continue;
        }
        if e.size() > FALLBACK_SIZE || redex_count(e) > FALLBACK_REDEXES {
            return None;
        }
        let reducts = par_reducts(e);
        if !tame(&reducts) {
            return None;
        }
        if !reducts.iter().any(|w| diff_eq(w, target)) {
            return Some(fail("successor does not reach the join", &[&t, e, target]));
        }
    }
    Some(Outcome::Pass)
}

fn typing(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Option<Outcome> {
    let tcfg = cfg.closed(true);
    let empty = TypingContext::new();
    let ty = gen_type_with(rng, cfg, cfg.type_depth);
    let t = gen_typed_term_with(rng, &tcfg, &empty, &ty)?;
    let raw: Vec<Term> = step(&t).successors.into_iter().map(|s| s.term).collect();
    if !tame([&t]) || !tame(&raw) {
        return None;
    }
    for s in &raw {
        if !check(&empty, s, &ty) {
            return Some(fail(&format!("subject reduction fails at {ty}"), &[&t, s]));
        }
    }
    let mut cur = t.clone();
    for _ in 0..DEFAULT_FUEL {
        let n = normal_canon(&cur);
        let e = embed(&n);
        if !check(&empty, &e, &ty) {
            return Some(fail(&format!("canonical form loses type {ty}"), &[&t, &e]));
        }
        let succs: Vec<Canonical> = wf_step(&e);
        for s in &succs {
            let se = embed(s);
            if !check(&empty, &se, &ty) {
                return Some(fail(&format!("subject reduction fails at {ty}"), &[&t, &e, &se]));
            }
        }
        if succs.is_empty() {
            if !is_canonical_value(&n) {
                return Some(fail("stuck closed term", &[&t, &e]));
            }
            return pass_if(normalize(&t, DEFAULT_FUEL).is_ok(), "fuel exhausted", &[&t]);
        }
        cur = fpr(&e);
        if !tame([&cur]) {
            return None;
        }
    }
    Some(fail("fuel exhausted", &[&t]))
}

/// Equivalent and reduction-related typed terms denote the same value
/// on every environment, over ℤ₃ and over ℤ₂.
fn soundness(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Option<Outcome> {
    let ctx = TypingContext::new().with("z", Type::base("a"));
    let mut tcfg = cfg.clone();
    tcfg.var_pool = vec!["x".into(), "y".into()];
    let ty = gen_type_with(rng, cfg, 2);
    let t = gen_typed_term_with(rng, &tcfg, &ctx, &ty)?;
    if !tame([&t]) {
        return None;
    }
    let mut related = vec![embed(&canonicalize(&t)), embed(&normal_canon(&t))];
    related.extend(step(&t).successors.into_iter().map(|s| s.term));
    related.extend(wf_step(&t).iter().map(embed));
    if let Ok((nf, _)) = normalize(&t, 64) {
        related.push(embed(&nf));
    }
    let mut cur = t.clone();
    for _ in 0..3 {
        if let Some(next) = random_rewrite(rng, &tcfg, &cur) {
            cur = next;
        }
    }
    related.push(cur);
    if !tame(&related) {
        return None;
    }
    related.retain(|r| check(&ctx, r, &ty));
    match agree_everywhere(&ctx, &t, &related, &ty) {
        Ok(None) => Some(Outcome::Pass),
        Ok(Some(bad)) => Some(fail(&format!("denotations differ at {ty}"), &[&t, &bad])),
        Err(ModelError::TooLarge { .. }) => None,
        Err(e) => Some(Outcome::Fail(format!("{e} on {t}"))),
    }
}

fn agree_everywhere(ctx: &TypingContext, t: &Term, others: &[Term], ty: &Type) -> Result<Option<Term>, ModelError> {
    for modulus in [3, 2] {
        let mcfg = ModelConfig::new([("a", modulus)])?;
        for env in all_envs(ctx, &mcfg)? {
            let v = eval(ctx, &env, t, ty, &mcfg)?;
            for o in others {
                if eval(ctx, &env, o, ty, &mcfg)? != v {
                    return Ok(Some(o.clone()));
                }
            }
        }
    }
    Ok(None)
}

fn erasure(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Option<Outcome> {
    let s = gen_term_with(rng, cfg);
    let s2 = step(&s).successors.choose(rng)?.term.clone();
    let (e1, e2) = (erase(&s), erase(&s2));
    if !tame([&s, &s2, &e1, &e2]) {
        return None;
    }
    if e1.contains_eps() || e2.contains_eps() {
        return Some(fail("erasure left an eps", &[&s, &s2]));
    }
    Some(match erase_simulates(&s, &s2, 8) {
        Ok(true) => Outcome::Pass,
        Ok(false) => fail("erased step not simulated", &[&s, &s2]),
        Err(e) => fail(&e.to_string(), &[&s, &s2]),
    })
}
