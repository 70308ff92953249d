use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::canonical_len;
use crate::syntax::{Name, Term, Type};
use crate::typing::{check, TypingContext};

/// Generator parameters; generation is a pure function of the config.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_size: usize,
    pub var_pool: Vec<String>,
    pub type_depth: usize,
    pub bases: Vec<String>,
    pub closed: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_size: 12,
            var_pool: ["x", "y", "z", "u", "v"].map(String::from).to_vec(),
            type_depth: 3,
            bases: vec!["a".into()],
            closed: false,
        }
    }
}

impl GenConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        GenConfig {
            seed,
            ..self.clone()
        }
    }

    pub fn with_size(&self, max_size: usize) -> Self {
        GenConfig {
            max_size: max_size.max(1),
            ..self.clone()
        }
    }

    pub fn closed(&self, closed: bool) -> Self {
        GenConfig {
            closed,
            ..self.clone()
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Decorrelates the per-instance seeds of a suite.
pub fn instance_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A size-bounded raw term; `closed` restricts variables to bound ones.
pub fn gen_term(cfg: &GenConfig) -> Term {
    gen_term_with(&mut cfg.rng(), cfg)
}

pub fn gen_term_with(rng: &mut impl Rng, cfg: &GenConfig) -> Term {
    let size = rng.gen_range(1..=cfg.max_size.max(1));
    gen_sized(rng, cfg, size, &mut Vec::new())
}

/// A raw term of at most `size` nodes over the given free variables.
pub fn gen_sized_over(rng: &mut impl Rng, pool: &[String], size: usize) -> Term {
    let cfg = GenConfig {
        var_pool: pool.to_vec(),
        ..GenConfig::default()
    };
    gen_sized(rng, &cfg, size.max(1), &mut Vec::new())
}

fn gen_leaf(rng: &mut impl Rng, cfg: &GenConfig, scope: &[Name]) -> Term {
    let mut names: Vec<&str> = scope.iter().map(|n| &**n).collect();
    if !cfg.closed {
        names.extend(cfg.var_pool.iter().map(String::as_str));
    }
    if names.is_empty() || rng.gen_ratio(1, 4) {
        Term::Zero
    } else {
        Term::var(names.choose(rng).unwrap())
    }
}

fn gen_lam(rng: &mut impl Rng, cfg: &GenConfig, size: usize, scope: &mut Vec<Name>) -> Term {
    let name: Name = cfg
        .var_pool
        .choose(rng)
        .map(|s| s.as_str())
        .unwrap_or("x")
        .into();
    scope.push(name.clone());
    let body = gen_sized(rng, cfg, size - 1, scope);
    scope.pop();
    Term::lam(&name, body)
}

fn gen_sized(rng: &mut impl Rng, cfg: &GenConfig, size: usize, scope: &mut Vec<Name>) -> Term {
    match size {
        0 | 1 => gen_leaf(rng, cfg, scope),
        2 => {
            if rng.gen_ratio(2, 3) {
                gen_lam(rng, cfg, size, scope)
            } else {
                Term::eps(gen_sized(rng, cfg, 1, scope))
            }
        }
        _ => {
            // weights tilted toward App/DApp
            let pick = rng.gen_range(0..11);
            let split = rng.gen_range(1..=size - 2);
            let rest = size - 1 - split;
            match pick {
                0..=2 | 3..=5 => {
                    // a λ head turns the node into a redex half of the time
                    let head = if split >= 2 && rng.gen_bool(0.5) {
                        gen_lam(rng, cfg, split, scope)
                    } else {
                        gen_sized(rng, cfg, split, scope)
                    };
                    let arg = gen_sized(rng, cfg, rest, scope);
                    if pick <= 2 {
                        Term::app(head, arg)
                    } else {
                        Term::dapp(head, arg)
                    }
                }
                6 | 7 => Term::sum(
                    gen_sized(rng, cfg, split, scope),
                    gen_sized(rng, cfg, rest, scope),
                ),
                8 | 9 => gen_lam(rng, cfg, size, scope),
                _ => Term::eps(gen_sized(rng, cfg, size - 1, scope)),
            }
        }
    }
}

/// A random type of arrow depth at most `depth` over the configured bases.
pub fn gen_type_with(rng: &mut impl Rng, cfg: &GenConfig, depth: usize) -> Type {
    let base = || cfg.bases.first().map(String::as_str).unwrap_or("a");
    if depth == 0 || rng.gen_ratio(1, 3) {
        let name = cfg.bases.choose(rng).map(String::as_str).unwrap_or_else(base);
        return Type::base(name);
    }
    let d = rng.gen_range(0..depth);
    Type::arrow(gen_type_with(rng, cfg, d), gen_type_with(rng, cfg, depth - 1))
}

pub fn gen_type(cfg: &GenConfig) -> Type {
    gen_type_with(&mut cfg.rng(), cfg, cfg.type_depth)
}

/// A goal-directed term with `check(ctx, t, ty)`, annotated binders.
pub fn gen_typed_term(cfg: &GenConfig, ctx: &TypingContext, ty: &Type) -> Option<Term> {
    gen_typed_term_with(&mut cfg.rng(), cfg, ctx, ty)
}

pub fn gen_typed_term_with(
    rng: &mut impl Rng,
    cfg: &GenConfig,
    ctx: &TypingContext,
    ty: &Type,
) -> Option<Term> {
    let max = cfg.max_size.max(1);
    let mut scope: Vec<(Name, Type)> = ctx.entries().to_vec();
    // redraw terms that are already equivalent to 0
    let mut t = Term::Zero;
    for _ in 0..8 {
        // mostly large sizes, but every size stays reachable
        let low = if rng.gen_ratio(1, 8) { 1 } else { max.div_ceil(2) };
        let size = rng.gen_range(low..=max);
        t = gen_typed(rng, cfg, &mut scope, ty, size);
        if canonical_len(&t) > 0.0 {
            break;
        }
    }
    check(ctx, &t, ty).then_some(t)
}

/// Variables in scope, later bindings shadowing earlier ones.
fn visible(scope: &[(Name, Type)]) -> Vec<&(Name, Type)> {
    scope
        .iter()
        .enumerate()
        .filter(|(i, (n, _))| !scope[i + 1..].iter().any(|(m, _)| m == n))
        .map(|(_, e)| e)
        .collect()
}

fn typed_leaf(rng: &mut impl Rng, scope: &[(Name, Type)], ty: &Type) -> Term {
    let vars: Vec<&Name> = visible(scope)
        .into_iter()
        .filter(|(_, t)| t == ty)
        .map(|(n, _)| n)
        .collect();
    if vars.is_empty() || rng.gen_ratio(1, 8) {
        Term::Zero
    } else {
        Term::var(vars.choose(rng).unwrap())
    }
}

fn typed_lam(
    rng: &mut impl Rng,
    cfg: &GenConfig,
    scope: &mut Vec<(Name, Type)>,
    dom: &Type,
    cod: &Type,
    size: usize,
) -> Term {
    let name: Name = cfg
        .var_pool
        .choose(rng)
        .map(|s| s.as_str())
        .unwrap_or("x")
        .into();
    scope.push((name.clone(), dom.clone()));
    let body = gen_typed(rng, cfg, scope, cod, size - 1);
    scope.pop();
    Term::lam_ann(&name, Some(dom.clone()), body)
}

fn gen_typed(
    rng: &mut impl Rng,
    cfg: &GenConfig,
    scope: &mut Vec<(Name, Type)>,
    ty: &Type,
    size: usize,
) -> Term {
    if size <= 1 {
        return typed_leaf(rng, scope, ty);
    }
    let arrow = match ty {
        Type::Arrow(d, c) => Some(((**d).clone(), (**c).clone())),
        Type::Base(_) => None,
    };
    if size == 2 {
        return match &arrow {
            Some((d, c)) if rng.gen_ratio(2, 3) => typed_lam(rng, cfg, scope, d, c, 2),
            _ => Term::eps(typed_leaf(rng, scope, ty)),
        };
    }
    let split = rng.gen_range(1..=size - 2);
    let rest = size - 1 - split;
    // heads of size one are mostly 0, and 0 applied to anything is 0
    let head_split = if size >= 4 { rng.gen_range(2..=size - 2) } else { 1 };
    let arg_rest = size - 1 - head_split;
    if rng.gen_bool(0.35) {
        if let Some(t) = headed_app(rng, cfg, scope, ty, size) {
            return t;
        }
    }
    loop {
        match rng.gen_range(0..12) {
            0..=4 => {
                // argument types come from the scope or stay shallow, so
                // bound variables get used and model carriers stay small
                let in_scope: Vec<Type> = visible(scope)
                    .into_iter()
                    .map(|(_, t)| t.clone())
                    .filter(|t| t.depth() <= 1)
                    .collect();
                let sigma = match in_scope.choose(rng) {
                    Some(t) if rng.gen_bool(0.6) => t.clone(),
                    // with nothing in scope a base-type argument can only be 0
                    None if cfg.type_depth > 0 && rng.gen_bool(0.7) => {
                        let a = gen_type_with(rng, cfg, 0);
                        Type::arrow(a.clone(), a)
                    }
                    _ => gen_type_with(rng, cfg, 1.min(cfg.type_depth)),
                };
                let fty = Type::arrow(sigma.clone(), ty.clone());
                let head = if head_split >= 2 && rng.gen_bool(0.75) {
                    typed_lam(rng, cfg, scope, &sigma, ty, head_split)
                } else {
                    gen_typed(rng, cfg, scope, &fty, head_split)
                };
                let arg = gen_typed(rng, cfg, scope, &sigma, arg_rest);
                return Term::app(head, arg);
            }
            5..=7 => {
                let Some((d, c)) = &arrow else { continue };
                let head = if head_split >= 2 && rng.gen_bool(0.75) {
                    typed_lam(rng, cfg, scope, d, c, head_split)
                } else {
                    gen_typed(rng, cfg, scope, ty, head_split)
                };
                let arg = gen_typed(rng, cfg, scope, d, arg_rest);
                return Term::dapp(head, arg);
            }
            8 if rng.gen_bool(0.5) => {
                if let Some(t) = headed_app(rng, cfg, scope, ty, size) {
                    return t;
                }
            }
            8 => {
                return Term::sum(
                    gen_typed(rng, cfg, scope, ty, split),
                    gen_typed(rng, cfg, scope, ty, rest),
                )
            }
            9 | 10 => {
                let Some((d, c)) = &arrow else { continue };
                return typed_lam(rng, cfg, scope, d, c, size);
            }
            _ => return Term::eps(gen_typed(rng, cfg, scope, ty, size - 1)),
        }
    }
}

/// `x a₁ … aₖ` for a visible `x : σ₁ → … → σₖ → ty` with `k ≥ 1`.
fn headed_app(
    rng: &mut impl Rng,
    cfg: &GenConfig,
    scope: &mut Vec<(Name, Type)>,
    ty: &Type,
    size: usize,
) -> Option<Term> {
    let mut heads = Vec::new();
    for (n, t) in visible(scope) {
        let mut args = Vec::new();
        let mut cur = t;
        while let Type::Arrow(d, c) = cur {
            args.push((**d).clone());
            cur = c;
            if cur == ty {
                heads.push((n.clone(), args.clone()));
            }
        }
    }
    let (head, args) = heads.choose(rng)?.clone();
    // each application node and argument takes at least one unit
    if 1 + 2 * args.len() > size {
        return None;
    }
    let mut budget = size - 1 - args.len();
    let mut t = Term::var(&head);
    for (i, a) in args.iter().enumerate() {
        let left = args.len() - i - 1;
        let n = if left == 0 { budget } else { rng.gen_range(1..=budget - left) };
        budget -= n;
        t = Term::app(t, gen_typed(rng, cfg, scope, a, n));
    }
    Some(t)
}
