//! The finite Abelian-group difference model on ℤ_n carriers.

pub mod axioms;
pub mod category;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Term, Type, Var};
use crate::typing::{elaborate, Elab, TypeError, TypingContext, UNCONSTRAINED};

pub use axioms::{check_cdc_axioms, check_lambda_axioms, AxiomCheck, AxiomReport, DEFAULT_BUDGET};
pub use category::{FinGroup, Map};

pub const DEFAULT_SIZE_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("base type `{0}` has no modulus in the model")]
    UnknownBase(String),
    #[error("carrier of {ty} exceeds the size limit {limit}")]
    TooLarge { ty: String, limit: usize },
    #[error("ill-typed: {0}")]
    IllTyped(#[from] TypeError),
    #[error("environment has {found} values for a context of {expected}")]
    EnvLength { expected: usize, found: usize },
    #[error("value for `{name}` does not inhabit {ty}")]
    EnvType { name: String, ty: String },
    #[error("bad model specification `{0}`")]
    BadSpec(String),
    #[error("moduli must be at least 1")]
    ZeroModulus,
}

/// Base-type moduli and the carrier size limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelConfig {
    pub bases: BTreeMap<String, u32>,
    pub size_limit: usize,
}

impl ModelConfig {
    pub fn new<S: AsRef<str>>(bases: impl IntoIterator<Item = (S, u32)>) -> Result<Self, ModelError> {
        let bases: BTreeMap<String, u32> = bases
            .into_iter()
            .map(|(n, m)| (n.as_ref().to_string(), m))
            .collect();
        if bases.values().any(|&m| m == 0) {
            return Err(ModelError::ZeroModulus);
        }
        Ok(ModelConfig {
            bases,
            size_limit: DEFAULT_SIZE_LIMIT,
        })
    }

    /// Parses `a=Z3,b=Z2`.
    pub fn parse(spec: &str) -> Result<Self, ModelError> {
        let mut pairs = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, group) = part
                .split_once('=')
                .ok_or_else(|| ModelError::BadSpec(part.to_string()))?;
            pairs.push((name.trim().to_string(), parse_cyclic(group.trim())?));
        }
        ModelConfig::new(pairs)
    }

    pub fn with_size_limit(mut self, limit: usize) -> Self {
        self.size_limit = limit;
        self
    }
}

/// Parses `Z3` (or `3`) into the modulus 3.
pub fn parse_cyclic(text: &str) -> Result<u32, ModelError> {
    let digits = text.strip_prefix('Z').unwrap_or(text);
    match digits.parse::<u32>() {
        Ok(0) => Err(ModelError::ZeroModulus),
        Ok(n) => Ok(n),
        Err(_) => Err(ModelError::BadSpec(text.to_string())),
    }
}

/// Denotation of a type: a cyclic group or a full function space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SemType {
    Group(u32),
    Func(Arc<SemType>, Arc<SemType>),
}

impl SemType {
    /// Carrier cardinality, or `None` past `usize`.
    pub fn size(&self) -> Option<usize> {
        match self {
            SemType::Group(n) => Some(*n as usize),
            SemType::Func(a, b) => {
                let exp = u32::try_from(a.size()?).ok()?;
                b.size()?.checked_pow(exp)
            }
        }
    }

    fn card(&self) -> usize {
        self.size().expect("carrier sizes are checked on denotation")
    }

    /// The carrier in enumeration order.
    pub fn carrier(&self) -> impl Iterator<Item = SemValue> + '_ {
        (0..self.card()).map(move |i| self.element(i))
    }

    /// The element with the given ordinal.
    pub fn element(&self, mut i: usize) -> SemValue {
        match self {
            SemType::Group(n) => SemValue::Elem {
                modulus: *n,
                residue: (i % *n as usize) as u32,
            },
            SemType::Func(a, b) => {
                let nb = b.card();
                let entries = (0..a.card())
                    .map(|_| {
                        let e = b.element(i % nb);
                        i /= nb;
                        e
                    })
                    .collect();
                SemValue::Table {
                    domain: a.clone(),
                    codomain: b.clone(),
                    entries: Arc::new(entries),
                }
            }
        }
    }
}

impl fmt::Display for SemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemType::Group(n) => write!(f, "Z{n}"),
            SemType::Func(a, b) => match **a {
                SemType::Func(..) => write!(f, "({a}) -> {b}"),
                SemType::Group(_) => write!(f, "{a} -> {b}"),
            },
        }
    }
}

/// A group element or a total function table indexed by domain ordinal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SemValue {
    Elem {
        modulus: u32,
        residue: u32,
    },
    Table {
        domain: Arc<SemType>,
        codomain: Arc<SemType>,
        entries: Arc<Vec<SemValue>>,
    },
}

impl SemValue {
    pub fn elem(modulus: u32, residue: u32) -> SemValue {
        SemValue::Elem {
            modulus,
            residue: residue % modulus,
        }
    }

    pub fn ty(&self) -> SemType {
        match self {
            SemValue::Elem { modulus, .. } => SemType::Group(*modulus),
            SemValue::Table {
                domain, codomain, ..
            } => SemType::Func(domain.clone(), codomain.clone()),
        }
    }

    /// Position of this value in its type's carrier enumeration.
    pub fn ordinal(&self) -> usize {
        match self {
            SemValue::Elem { residue, .. } => *residue as usize,
            SemValue::Table {
                codomain, entries, ..
            } => {
                let nb = codomain.card();
                entries.iter().rev().fold(0, |acc, e| acc * nb + e.ordinal())
            }
        }
    }

    /// Function application by table lookup.
    pub fn apply(&self, arg: &SemValue) -> SemValue {
        match self {
            SemValue::Table { entries, .. } => entries[arg.ordinal()].clone(),
            SemValue::Elem { .. } => panic!("applied a group element"),
        }
    }

    fn map2(&self, other: &SemValue, op: &dyn Fn(u32, u32, u32) -> u32) -> SemValue {
        match (self, other) {
            (
                SemValue::Elem { modulus, residue },
                SemValue::Elem {
                    modulus: m2,
                    residue: r2,
                },
            ) => {
                assert_eq!(modulus, m2, "group mismatch");
                SemValue::Elem {
                    modulus: *modulus,
                    residue: op(*residue, *r2, *modulus),
                }
            }
            (
                SemValue::Table {
                    domain,
                    codomain,
                    entries,
                },
                SemValue::Table { entries: e2, .. },
            ) => {
                assert_eq!(entries.len(), e2.len(), "domain mismatch");
                SemValue::Table {
                    domain: domain.clone(),
                    codomain: codomain.clone(),
                    entries: Arc::new(entries.iter().zip(e2.iter()).map(|(a, b)| a.map2(b, op)).collect()),
                }
            }
            _ => panic!("adding values of different types"),
        }
    }

    fn negate(&self) -> SemValue {
        match self {
            SemValue::Elem { modulus, residue } => SemValue::Elem {
                modulus: *modulus,
                residue: (modulus - residue) % modulus,
            },
            SemValue::Table {
                domain,
                codomain,
                entries,
            } => SemValue::Table {
                domain: domain.clone(),
                codomain: codomain.clone(),
                entries: Arc::new(entries.iter().map(SemValue::negate).collect()),
            },
        }
    }
}

impl fmt::Display for SemValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemValue::Elem { residue, .. } => write!(f, "{residue}"),
            SemValue::Table {
                domain, entries, ..
            } => {
                f.write_str("{")?;
                for (i, e) in entries.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}↦{}", domain.element(i), e)?;
                }
                f.write_str("}")
            }
        }
    }
}

pub fn val_add(u: &SemValue, v: &SemValue) -> SemValue {
    u.map2(v, &|a, b, m| (a + b) % m)
}

pub fn val_sub(u: &SemValue, v: &SemValue) -> SemValue {
    val_add(u, &v.negate())
}

pub fn val_zero(ty: &SemType) -> SemValue {
    ty.element(0)
}

/// ε is the identity in this model.
pub fn val_eps(u: &SemValue) -> SemValue {
    u.clone()
}

fn check_size(ty: &SemType, cfg: &ModelConfig) -> Result<(), ModelError> {
    match ty.size() {
        Some(n) if n <= cfg.size_limit => Ok(()),
        _ => Err(ModelError::TooLarge {
            ty: ty.to_string(),
            limit: cfg.size_limit,
        }),
    }
}

/// `⟦τ⟧`; types no derivation constrains denote the trivial group.
pub fn denote_type(ty: &Type, cfg: &ModelConfig) -> Result<SemType, ModelError> {
    let sem = match ty {
        Type::Base(n) if &**n == UNCONSTRAINED => SemType::Group(1),
        Type::Base(n) => SemType::Group(
            *cfg.bases
                .get(&**n)
                .ok_or_else(|| ModelError::UnknownBase(n.to_string()))?,
        ),
        Type::Arrow(a, b) => SemType::Func(
            Arc::new(denote_type(a, cfg)?),
            Arc::new(denote_type(b, cfg)?),
        ),
    };
    check_size(&sem, cfg)?;
    Ok(sem)
}

struct Evaluator<'a> {
    cfg: &'a ModelConfig,
    types: HashMap<Type, Arc<SemType>>,
}

impl<'a> Evaluator<'a> {
    fn denote(&mut self, ty: &Type) -> Result<Arc<SemType>, ModelError> {
        if let Some(s) = self.types.get(ty) {
            return Ok(s.clone());
        }
        let s = Arc::new(denote_type(ty, self.cfg)?);
        self.types.insert(ty.clone(), s.clone());
        Ok(s)
    }

    /// `free` holds the context values, `bound` the λ-bound ones.
    fn eval(&mut self, e: &Elab, free: &[(&str, &SemValue)], bound: &mut Vec<SemValue>) -> Result<SemValue, ModelError> {
        Ok(match e {
            Elab::Var(Var::Bound(i)) => bound[bound.len() - 1 - *i as usize].clone(),
            Elab::Var(Var::Free(n)) => free
                .iter()
                .rev()
                .find(|(name, _)| *name == &**n)
                .map(|(_, v)| (*v).clone())
                .expect("elaborated terms only mention context variables"),
            Elab::Zero(ty) => val_zero(&*self.denote(ty)?),
            Elab::Sum(a, b) => {
                let va = self.eval(a, free, bound)?;
                let vb = self.eval(b, free, bound)?;
                val_add(&va, &vb)
            }
            Elab::Eps(a) => val_eps(&self.eval(a, free, bound)?),
            Elab::Lam(dom, body) => {
                let dom = self.denote(dom)?;
                let mut entries = Vec::with_capacity(dom.card());
                for x in dom.carrier() {
                    bound.push(x);
                    let r = self.eval(body, free, bound);
                    bound.pop();
                    entries.push(r?);
                }
                let codomain = Arc::new(entries[0].ty());
                let table = SemValue::Table {
                    domain: dom,
                    codomain,
                    entries: Arc::new(entries),
                };
                check_size(&table.ty(), self.cfg)?;
                table
            }
            Elab::App(f, a) => {
                let vf = self.eval(f, free, bound)?;
                let va = self.eval(a, free, bound)?;
                vf.apply(&va)
            }
            Elab::DApp(f, a) => {
                let vf = self.eval(f, free, bound)?;
                let va = self.eval(a, free, bound)?;
                let SemValue::Table {
                    domain, codomain, ..
                } = &vf
                else {
                    panic!("differential application of a group element");
                };
                let entries = domain
                    .carrier()
                    .map(|y| val_sub(&vf.apply(&val_add(&y, &va)), &vf.apply(&y)))
                    .collect();
                SemValue::Table {
                    domain: domain.clone(),
                    codomain: codomain.clone(),
                    entries: Arc::new(entries),
                }
            }
        })
    }
}

/// `⟦Γ ⊢ t : τ⟧(env)`.
pub fn eval(
    ctx: &TypingContext,
    env: &[SemValue],
    t: &Term,
    ty: &Type,
    cfg: &ModelConfig,
) -> Result<SemValue, ModelError> {
    let elab = elaborate(ctx, t, ty)?;
    if env.len() != ctx.len() {
        return Err(ModelError::EnvLength {
            expected: ctx.len(),
            found: env.len(),
        });
    }
    let mut ev = Evaluator {
        cfg,
        types: HashMap::new(),
    };
    for ((name, cty), v) in ctx.entries().iter().zip(env) {
        if *ev.denote(cty)? != v.ty() {
            return Err(ModelError::EnvType {
                name: name.to_string(),
                ty: cty.to_string(),
            });
        }
    }
    ev.denote(ty)?;
    let free: Vec<(&str, &SemValue)> = ctx
        .entries()
        .iter()
        .map(|(n, _)| &**n)
        .zip(env.iter())
        .collect();
    ev.eval(&elab, &free, &mut Vec::new())
}

/// Every environment for a context, in lexicographic carrier order.
pub fn all_envs(ctx: &TypingContext, cfg: &ModelConfig) -> Result<Vec<Vec<SemValue>>, ModelError> {
    let mut envs = vec![Vec::new()];
    for (_, ty) in ctx.entries() {
        let sem = denote_type(ty, cfg)?;
        let mut next = Vec::new();
        for env in &envs {
            for v in sem.carrier() {
                let mut e: Vec<SemValue> = env.clone();
                e.push(v);
                next.push(e);
            }
        }
        envs = next;
    }
    Ok(envs)
}

/// Parses a value of a denoted type: a residue, or a table
/// `{k↦v, ...}` (`->` also accepted) listing every domain element.
pub fn parse_value(text: &str, ty: &SemType) -> Result<SemValue, ModelError> {
    let bad = || ModelError::BadSpec(text.to_string());
    let text = text.trim();
    match ty {
        SemType::Group(n) => {
            let r: u32 = text.parse().map_err(|_| bad())?;
            if r >= *n {
                return Err(bad());
            }
            Ok(SemValue::elem(*n, r))
        }
        SemType::Func(a, b) => {
            let inner = text
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(bad)?;
            let mut entries: Vec<Option<SemValue>> = vec![None; a.card()];
            for item in split_top(inner) {
                let item = item.replace('↦', "->");
                let (k, v) = split_arrow(&item).ok_or_else(bad)?;
                let key = parse_value(k, a)?;
                let val = parse_value(v, b)?;
                entries[key.ordinal()] = Some(val);
            }
            let entries: Option<Vec<SemValue>> = entries.into_iter().collect();
            Ok(SemValue::Table {
                domain: a.clone(),
                codomain: b.clone(),
                entries: Arc::new(entries.ok_or_else(bad)?),
            })
        }
    }
}

fn split_top(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

fn split_arrow(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0;
    let bytes = s.as_bytes();
    for i in 0..bytes.len().saturating_sub(1) {
        match bytes[i] {
            b'{' => depth += 1,
            b'}' => depth -= 1,
            b'-' if depth == 0 && bytes[i + 1] == b'>' => return Some((&s[..i], &s[i + 2..])),
            _ => {}
        }
    }
    None
}
