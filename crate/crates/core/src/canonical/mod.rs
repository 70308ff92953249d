//! Canonical forms and the decision procedure for differential equivalence.
//!
//! A canonical term is a list of ε-weighted basic terms. Exponents of
//! summands whose body absorbs extra ε factors are capped at one, which
//! keeps the representation unique up to permutative equivalence.

use std::fmt;
use std::sync::Arc;

use crate::syntax::{print, Binder, Term, Var};

/// Basic term: no top-level sums or ε.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basic {
    Var(Var),
    Lam(Binder, Arc<Basic>),
    App(Arc<Basic>, Additive),
    DApp(Arc<Basic>, Arc<Basic>),
}

/// Sum of basic terms without ε weights; empty denotes 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Additive(pub Vec<Basic>);

/// One summand `ε^k b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    exponent: u32,
    body: Basic,
}

/// Sum of ε-weighted basic terms; empty denotes 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Canonical(Vec<Summand>);

impl Basic {
    pub fn var(name: &str) -> Basic {
        Basic::Var(Var::Free(name.into()))
    }

    pub fn dapp(s: Basic, t: Basic) -> Basic {
        Basic::DApp(Arc::new(s), Arc::new(t))
    }

    pub fn app(s: Basic, t: Additive) -> Basic {
        Basic::App(Arc::new(s), t)
    }

    pub fn is_lam(&self) -> bool {
        matches!(self, Basic::Lam(..))
    }

    /// True when `ε² b ∼ε ε b`.
    ///
    /// Second differentials absorb ε directly; the property then
    /// propagates through λ bodies, application heads and both components
    /// of a differential application, since ε commutes out of each of
    /// those positions.
    pub fn absorbs_eps(&self) -> bool {
        match self {
            Basic::Var(_) => false,
            Basic::Lam(_, b) => b.absorbs_eps(),
            Basic::App(f, _) => f.absorbs_eps(),
            Basic::DApp(f, a) => matches!(**f, Basic::DApp(..)) || f.absorbs_eps() || a.absorbs_eps(),
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            Basic::Var(v) => Term::Var(v.clone()),
            Basic::Lam(b, body) => Term::Lam(b.clone(), Arc::new(body.to_term())),
            Basic::App(f, a) => Term::app(f.to_term(), a.to_term()),
            Basic::DApp(f, a) => Term::dapp(f.to_term(), a.to_term()),
        }
    }
}

impl Additive {
    pub fn zero() -> Additive {
        Additive(Vec::new())
    }

    /// Right-nested sum, or `0` when empty.
    pub fn to_term(&self) -> Term {
        right_nested(self.0.iter().map(Basic::to_term).collect())
    }
}

fn right_nested(mut parts: Vec<Term>) -> Term {
    let Some(mut acc) = parts.pop() else {
        return Term::Zero;
    };
    while let Some(p) = parts.pop() {
        acc = Term::sum(p, acc);
    }
    acc
}

impl Summand {
    /// Builds `ε^k b`, capping the exponent at one for absorbing bodies.
    pub fn new(exponent: u32, body: Basic) -> Summand {
        let exponent = if exponent > 1 && body.absorbs_eps() { 1 } else { exponent };
        Summand { exponent, body }
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn body(&self) -> &Basic {
        &self.body
    }

    pub fn to_term(&self) -> Term {
        (0..self.exponent).fold(self.body.to_term(), |t, _| Term::eps(t))
    }
}

impl Canonical {
    pub fn zero() -> Canonical {
        Canonical(Vec::new())
    }

    pub fn single(exponent: u32, body: Basic) -> Canonical {
        Canonical(vec![Summand::new(exponent, body)])
    }

    pub fn from_summands(items: impl IntoIterator<Item = Summand>) -> Canonical {
        Canonical(items.into_iter().collect())
    }

    pub fn summands(&self) -> &[Summand] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn map(&self, f: impl Fn(&Summand) -> Summand) -> Canonical {
        Canonical(self.0.iter().map(f).collect())
    }
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(&embed(self)))
    }
}

/// Canonical sum: concatenation.
pub fn cansum(s: &Canonical, t: &Canonical) -> Canonical {
    let mut v = s.0.clone();
    v.extend(t.0.iter().cloned());
    Canonical(v)
}

fn cansum_all(parts: impl IntoIterator<Item = Canonical>) -> Canonical {
    Canonical(parts.into_iter().flat_map(|c| c.0).collect())
}

pub fn eps_star(t: &Canonical) -> Canonical {
    eps_star_pow(t, 1)
}

/// `(ε*)^n`.
pub fn eps_star_pow(t: &Canonical, n: u32) -> Canonical {
    if n == 0 {
        return t.clone();
    }
    t.map(|s| Summand::new(s.exponent + n, s.body.clone()))
}

/// `Σ ε^kᵢ sᵢ ↦ Σ ε^kᵢ D(sᵢ)·t`.
pub fn d_star(s: &Canonical, t: &Basic) -> Canonical {
    s.map(|si| Summand::new(si.exponent, Basic::dapp(si.body.clone(), t.clone())))
}

/// Exponent-zero summands.
pub fn pri(t: &Canonical) -> Additive {
    Additive(
        t.0.iter()
            .filter(|s| s.exponent == 0)
            .map(|s| s.body.clone())
            .collect(),
    )
}

/// Positive-exponent summands, each with one ε removed, so that
/// `T ∼ε pri(T) + ε tan(T)`.
pub fn tan(t: &Canonical) -> Canonical {
    Canonical(
        t.0.iter()
            .filter(|s| s.exponent > 0)
            .map(|s| Summand::new(s.exponent - 1, s.body.clone()))
            .collect(),
    )
}

/// `Σ ε^kᵢ sᵢ ↦ Σ ε^kᵢ (sᵢ t)`.
pub fn ap(s: &Canonical, t: &Additive) -> Canonical {
    s.map(|si| Summand::new(si.exponent, Basic::app(si.body.clone(), t.clone())))
}

/// Regularization of `D(s)·T`.
pub fn reg(s: &Basic, t: &Canonical) -> Canonical {
    reg_slice(s, &t.0)
}

fn reg_slice(s: &Basic, ts: &[Summand]) -> Canonical {
    let Some((head, rest)) = ts.split_first() else {
        return Canonical::zero();
    };
    let tail = reg_slice(s, rest);
    let direct = Canonical::single(head.exponent, Basic::dapp(s.clone(), head.body.clone()));
    let cross = eps_star_pow(&d_star(&tail, &head.body), head.exponent + 1);
    cansum_all([direct, tail, cross])
}

/// Canonical form of an unrestricted term.
pub fn canonicalize(t: &Term) -> Canonical {
    match t {
        Term::Zero => Canonical::zero(),
        Term::Var(v) => Canonical::single(0, Basic::Var(v.clone())),
        Term::Sum(a, b) => cansum(&canonicalize(a), &canonicalize(b)),
        Term::Eps(a) => eps_star(&canonicalize(a)),
        Term::Lam(binder, body) => canonicalize(body)
            .map(|s| Summand::new(s.exponent, Basic::Lam(binder.clone(), Arc::new(s.body.clone())))),
        Term::DApp(s, t) => {
            let cs = canonicalize(s);
            let ct = canonicalize(t);
            cansum_all(
                cs.0.iter()
                    .map(|si| eps_star_pow(&reg(&si.body, &ct), si.exponent)),
            )
        }
        Term::App(s, t) => {
            let cs = canonicalize(s);
            let ct = canonicalize(t);
            let p = pri(&ct);
            let tg = tan(&ct);
            let primal = ap(&cs, &p);
            // Each head keeps its own ε weight on the tangent part as well.
            let tangent = eps_star(&cansum_all(
                cs.0.iter()
                    .map(|si| eps_star_pow(&ap(&reg(&si.body, &tg), &p), si.exponent)),
            ));
            cansum(&primal, &tangent)
        }
    }
}

/// Forget canonicity: `ε^k` becomes nested `Eps`, the list a right-nested sum.
pub fn embed(t: &Canonical) -> Term {
    right_nested(t.0.iter().map(Summand::to_term).collect())
}

fn normalize_basic(b: &Basic) -> Basic {
    match b {
        Basic::Var(_) => b.clone(),
        Basic::Lam(binder, body) => Basic::Lam(binder.clone(), Arc::new(normalize_basic(body))),
        Basic::App(f, a) => Basic::app(normalize_basic(f), normalize_additive(a)),
        Basic::DApp(..) => {
            let mut args = Vec::new();
            let mut cur = b;
            while let Basic::DApp(f, a) = cur {
                args.push(normalize_basic(a));
                cur = f;
            }
            args.sort();
            args.into_iter()
                .fold(normalize_basic(cur), |acc, a| Basic::dapp(acc, a))
        }
    }
}

fn normalize_additive(a: &Additive) -> Additive {
    let mut v: Vec<Basic> = a.0.iter().map(normalize_basic).collect();
    v.sort();
    Additive(v)
}

/// Unique representative of the permutative-equivalence class.
pub fn perm_normalize(t: &Canonical) -> Canonical {
    let mut v: Vec<Summand> = t
        .0
        .iter()
        .map(|s| Summand::new(s.exponent, normalize_basic(&s.body)))
        .collect();
    v.sort_by(|x, y| x.body.cmp(&y.body).then(x.exponent.cmp(&y.exponent)));
    Canonical(v)
}

pub fn perm_eq(s: &Canonical, t: &Canonical) -> bool {
    perm_normalize(s) == perm_normalize(t)
}

/// Decides `s ∼ε t`.
pub fn diff_eq(s: &Term, t: &Term) -> bool {
    perm_eq(&canonicalize(s), &canonicalize(t))
}

/// Normalized canonical form, the usual representative for printing.
pub fn normal_canon(t: &Term) -> Canonical {
    perm_normalize(&canonicalize(t))
}

/// The basic-term grammar invariants plus exponent saturation.
pub fn is_well_formed(t: &Canonical) -> bool {
    t.0.iter()
        .all(|s| !(s.exponent > 1 && s.body.absorbs_eps()))
}

/// Number of summands `canonicalize(t)` produces, computed without
/// building it, as `(exponent-zero, positive-exponent, largest over all
/// subterms)`. Saturates at `f64` range.
fn summand_counts(t: &Term) -> (f64, f64, f64) {
    let (z, p, peak) = match t {
        Term::Zero => (0.0, 0.0, 0.0),
        Term::Var(_) => (1.0, 0.0, 0.0),
        Term::Sum(a, b) => {
            let (a0, ap, am) = summand_counts(a);
            let (b0, bp, bm) = summand_counts(b);
            (a0 + b0, ap + bp, am.max(bm))
        }
        Term::Eps(a) => {
            let (a0, ap, am) = summand_counts(a);
            (0.0, a0 + ap, am)
        }
        Term::Lam(_, a) => summand_counts(a),
        Term::DApp(s, t) => {
            let (s0, sp, sm) = summand_counts(s);
            let (t0, tp, tm) = summand_counts(t);
            let total = (s0 + sp) * ((t0 + tp).exp2() - 1.0);
            (s0 * t0, total - s0 * t0, sm.max(tm))
        }
        Term::App(s, t) => {
            let (s0, sp, sm) = summand_counts(s);
            let (_, tp, tm) = summand_counts(t);
            let tangent = (s0 + sp) * (tp.exp2() - 1.0);
            (s0, sp + tangent, sm.max(tm))
        }
    };
    (z, p, peak.max(z + p))
}

/// Exact summand count of `canonicalize(t)`.
pub fn canonical_len(t: &Term) -> f64 {
    let (z, p, _) = summand_counts(t);
    z + p
}

/// Largest summand count met while canonicalizing `t`; a cheap guard
/// against the exponential growth of regularization.
pub fn canonical_cost(t: &Term) -> f64 {
    summand_counts(t).2
}
