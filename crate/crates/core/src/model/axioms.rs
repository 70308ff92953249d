//! Brute-force checks of the difference-category and difference
//! λ-category laws in the Ab model.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::category::{FinGroup, Map};

/// Default number of map tuples examined per law before switching to sampling.
pub const DEFAULT_BUDGET: usize = 10_000;

const MAX_REPORTED: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: String,
    pub instances: usize,
    pub exhaustive: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub title: String,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn violation_count(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<18} {:>7} instances  {:<10} {} violations",
                c.name,
                c.instances,
                if c.exhaustive { "exhaustive" } else { "sampled" },
                c.violations.len()
            )?;
            for v in &c.violations {
                writeln!(f, "    {v}")?;
            }
        }
        write!(f, "  total violations: {}", self.violation_count())
    }
}

fn map_count(dom: &FinGroup, cod: &FinGroup) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..dom.size() {
        acc = acc.saturating_mul(cod.size() as u128);
    }
    acc
}

/// Every tuple of maps from the given hom-sets when there are at most
/// `budget` of them, otherwise `budget` seeded random tuples.
fn tuples(spaces: &[(FinGroup, FinGroup)], budget: usize, seed: u64) -> (Vec<Vec<Map>>, bool) {
    let counts: Vec<u128> = spaces.iter().map(|(d, c)| map_count(d, c)).collect();
    let total = counts.iter().fold(1u128, |a, &c| a.saturating_mul(c));
    if total <= budget as u128 {
        let all = (0..total)
            .map(|mut i| {
                spaces
                    .iter()
                    .zip(&counts)
                    .map(|((d, c), &n)| {
                        let m = Map::nth(d, c, i % n);
                        i /= n;
                        m
                    })
                    .collect()
            })
            .collect();
        return (all, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled = (0..budget)
        .map(|_| {
            spaces
                .iter()
                .map(|(d, c)| {
                    let table = d.elements().map(|_| rng.gen_range(0..c.size())).collect();
                    Map::from_table(d, c, table)
                })
                .collect()
        })
        .collect();
    (sampled, false)
}

fn run(
    name: &str,
    spaces: &[(FinGroup, FinGroup)],
    budget: usize,
    seed: u64,
    law: impl Fn(&[Map]) -> bool + Sync,
) -> AxiomCheck {
    let (items, exhaustive) = tuples(spaces, budget, seed);
    let mut violations: Vec<String> = items
        .par_iter()
        .filter(|maps| !law(maps))
        .map(|maps| {
            let shown: Vec<String> = maps.iter().map(|m| format!("{:?}", table_of(m))).collect();
            format!("{name} fails for maps {}", shown.join(", "))
        })
        .collect();
    violations.truncate(MAX_REPORTED);
    AxiomCheck {
        name: name.to_string(),
        instances: items.len(),
        exhaustive,
        violations,
    }
}

fn table_of(m: &Map) -> Vec<usize> {
    m.dom.elements().map(|x| m.apply(x)).collect()
}

fn prod(a: &FinGroup, b: &FinGroup) -> FinGroup {
    FinGroup::product(a, b)
}

fn d(f: &Map) -> Map {
    Map::derivative(f)
}

/// Generalized elements `x, u, v` of `A` over `(A × A) × A`.
fn xuv(a: &FinGroup) -> (Map, Map, Map) {
    let aa = prod(a, a);
    let x = Map::then(&Map::proj1(&aa, a), &Map::proj1(a, a));
    let u = Map::then(&Map::proj1(&aa, a), &Map::proj2(a, a));
    let v = Map::proj2(&aa, a);
    (x, u, v)
}

/// CdC0: `f ∘ (x + εu) = f ∘ x + ε(∂f ∘ ⟨x, u⟩)`.
pub fn cdc0(f: &Map) -> bool {
    let a = &f.dom;
    let (x, u) = (Map::proj1(a, a), Map::proj2(a, a));
    let lhs = Map::then(&Map::add(&x, &Map::eps(&u)), f);
    let rhs = Map::add(&Map::then(&x, f), &Map::eps(&Map::then(&Map::pair(&x, &u), &d(f))));
    lhs == rhs
}

/// CdC1: `∂(f+g) = ∂f + ∂g`, `∂0 = 0`, `∂(εf) = ε(∂f)`.
pub fn cdc1(f: &Map, g: &Map) -> bool {
    let zero = Map::zero(&f.dom, &f.cod);
    d(&Map::add(f, g)) == Map::add(&d(f), &d(g))
        && d(&zero) == Map::zero(&prod(&f.dom, &f.dom), &f.cod)
        && d(&Map::eps(f)) == Map::eps(&d(f))
}

/// CdC2: `∂f ∘ ⟨x, u+v⟩ = ∂f ∘ ⟨x, u⟩ + ∂f ∘ ⟨x + εu, v⟩` and `∂f ∘ ⟨x, 0⟩ = 0`.
pub fn cdc2(f: &Map) -> bool {
    let a = &f.dom;
    let (x, u, v) = xuv(a);
    let df = d(f);
    let lhs = Map::then(&Map::pair(&x, &Map::add(&u, &v)), &df);
    let rhs = Map::add(
        &Map::then(&Map::pair(&x, &u), &df),
        &Map::then(&Map::pair(&Map::add(&x, &Map::eps(&u)), &v), &df),
    );
    let at_zero = Map::then(&Map::pair(&Map::id(a), &Map::zero(a, a)), &df);
    lhs == rhs && at_zero == Map::zero(a, &f.cod)
}

/// CdC3: `∂Id = π₂`, `∂π₁ = π₁ ∘ π₂`, `∂π₂ = π₂ ∘ π₂`.
pub fn cdc3(a: &FinGroup, b: &FinGroup) -> bool {
    let ab = prod(a, b);
    let p1 = Map::proj1(a, b);
    let p2 = Map::proj2(a, b);
    let outer2 = Map::proj2(&ab, &ab);
    d(&Map::id(a)) == Map::proj2(a, a)
        && d(&p1) == Map::then(&outer2, &p1)
        && d(&p2) == Map::then(&outer2, &p2)
}

/// CdC4: `∂⟨f, g⟩ = ⟨∂f, ∂g⟩` and `∂!_A = !_{A×A}`.
pub fn cdc4(f: &Map, g: &Map) -> bool {
    let a = &f.dom;
    d(&Map::pair(f, g)) == Map::pair(&d(f), &d(g)) && d(&Map::bang(a)) == Map::bang(&prod(a, a))
}

/// CdC5: `∂(g ∘ f) = ∂g ∘ ⟨f ∘ π₁, ∂f⟩`.
pub fn cdc5(f: &Map, g: &Map) -> bool {
    let a = &f.dom;
    let lhs = d(&Map::then(f, g));
    let rhs = Map::then(&Map::pair(&Map::then(&Map::proj1(a, a), f), &d(f)), &d(g));
    lhs == rhs
}

/// CdC6: `∂²f ∘ ⟨⟨x, u⟩, ⟨0, v⟩⟩ = ∂f ∘ ⟨x + εu, v⟩`.
pub fn cdc6(f: &Map) -> bool {
    let a = &f.dom;
    let (x, u, v) = xuv(a);
    let zero = Map::zero(&x.dom, a);
    let lhs = Map::then(
        &Map::pair(&Map::pair(&x, &u), &Map::pair(&zero, &v)),
        &d(&d(f)),
    );
    let rhs = Map::then(&Map::pair(&Map::add(&x, &Map::eps(&u)), &v), &d(f));
    lhs == rhs
}

/// CdC7: `∂²f ∘ ⟨⟨x, u⟩, ⟨v, 0⟩⟩ = ∂²f ∘ ⟨⟨x, v⟩, ⟨u, 0⟩⟩`.
pub fn cdc7(f: &Map) -> bool {
    let a = &f.dom;
    let (x, u, v) = xuv(a);
    let zero = Map::zero(&x.dom, a);
    let ddf = d(&d(f));
    let lhs = Map::then(&Map::pair(&Map::pair(&x, &u), &Map::pair(&v, &zero)), &ddf);
    let rhs = Map::then(&Map::pair(&Map::pair(&x, &v), &Map::pair(&u, &zero)), &ddf);
    lhs == rhs
}

/// `∂f ∘ ⟨x, εu⟩ = ε(∂f) ∘ ⟨x, u⟩`.
pub fn d_eps_i(f: &Map) -> bool {
    let a = &f.dom;
    let (x, u) = (Map::proj1(a, a), Map::proj2(a, a));
    Map::then(&Map::pair(&x, &Map::eps(&u)), &d(f)) == Map::then(&Map::pair(&x, &u), &Map::eps(&d(f)))
}

/// `ε(∂²f) ∘ ⟨⟨x, u⟩, ⟨v, 0⟩⟩ = ε²(∂²f) ∘ ⟨⟨x, u⟩, ⟨v, 0⟩⟩`.
pub fn d_eps_ii(f: &Map) -> bool {
    let a = &f.dom;
    let (x, u, v) = xuv(a);
    let zero = Map::zero(&x.dom, a);
    let point = Map::pair(&Map::pair(&x, &u), &Map::pair(&v, &zero));
    let ddf = d(&d(f));
    Map::then(&point, &Map::eps(&ddf)) == Map::then(&point, &Map::eps(&Map::eps(&ddf)))
}

/// CdC0–7 and both ε-derivative identities for maps `A → B`.
pub fn check_cdc_axioms(a: &FinGroup, b: &FinGroup, budget: usize, seed: u64) -> AxiomReport {
    let ab = (a.clone(), b.clone());
    let bb = (b.clone(), b.clone());
    let checks = vec![
        run("CdC0", &[ab.clone()], budget, seed, |m| cdc0(&m[0])),
        run("CdC1", &[ab.clone(), ab.clone()], budget, seed, |m| cdc1(&m[0], &m[1])),
        run("CdC2", &[ab.clone()], budget, seed, |m| cdc2(&m[0])),
        run("CdC3", &[], budget, seed, |_| cdc3(a, b)),
        run("CdC4", &[ab.clone(), ab.clone()], budget, seed, |m| cdc4(&m[0], &m[1])),
        run("CdC5", &[ab.clone(), bb], budget, seed, |m| cdc5(&m[0], &m[1])),
        run("CdC6", &[ab.clone()], budget, seed, |m| cdc6(&m[0])),
        run("CdC7", &[ab.clone()], budget, seed, |m| cdc7(&m[0])),
        run("d-eps.i", &[ab.clone()], budget, seed, |m| d_eps_i(&m[0])),
        run("d-eps.ii", &[ab], budget, seed, |m| d_eps_ii(&m[0])),
    ];
    AxiomReport {
        title: format!("difference-category laws for maps {a} -> {b}"),
        checks,
    }
}

/// L1: `∂Λ(f) = Λ(∂f ∘ ⟨π₁ × Id, π₂ × 0⟩)`, also in its `sw` form.
pub fn l1(f: &Map, a: &FinGroup, b: &FinGroup) -> bool {
    let aa = prod(a, a);
    let lhs = d(&Map::curry(f, a, b));
    let shuffle = Map::pair(
        &Map::times(&Map::proj1(a, a), &Map::id(b)),
        &Map::times(&Map::proj2(a, a), &Map::zero(b, b)),
    );
    let rhs = Map::curry(&Map::then(&shuffle, &d(f)), &aa, b);
    // sw : (A×A)×B → (A×B)×A
    let sw = Map::pair(
        &Map::pair(
            &Map::then(&Map::proj1(&aa, b), &Map::proj1(a, a)),
            &Map::proj2(&aa, b),
        ),
        &Map::then(&Map::proj1(&aa, b), &Map::proj2(a, a)),
    );
    let ab = prod(a, b);
    let widen = Map::times(&Map::id(&ab), &Map::pair(&Map::id(a), &Map::zero(a, b)));
    let rhs_sw = Map::curry(&Map::then(&Map::then(&sw, &widen), &d(f)), &aa, b);
    lhs == rhs && lhs == rhs_sw
}

/// L2: `Λ(εf) = ε(Λf)`.
pub fn l2(f: &Map, a: &FinGroup, b: &FinGroup) -> bool {
    Map::curry(&Map::eps(f), a, b) == Map::eps(&Map::curry(f, a, b))
}

/// Both derivative-of-evaluation identities, for `f : A × B → C`, `e : A → B`.
pub fn lambda_d_ev(f: &Map, e: &Map, a: &FinGroup, b: &FinGroup) -> (bool, bool) {
    let c = &f.cod;
    let lf = Map::curry(f, a, b);
    let ev = Map::ev(b, c);
    let lhs = d(&Map::then(&Map::pair(&lf, e), &ev));
    let (p1, p2) = (Map::proj1(a, a), Map::proj2(a, a));
    let e1 = Map::then(&p1, e);
    let tangent = Map::pair(&Map::zero(&prod(a, a), a), &d(e));
    let first = Map::add(
        &Map::then(&Map::pair(&d(&lf), &e1), &ev),
        &Map::then(
            &Map::pair(&Map::pair(&Map::add(&p1, &Map::eps(&p2)), &e1), &tangent),
            &d(f),
        ),
    );
    let second = Map::add(
        &Map::then(&Map::pair(&d(&lf), &Map::add(&e1, &Map::eps(&d(e)))), &ev),
        &Map::then(&Map::pair(&Map::pair(&p1, &e1), &tangent), &d(f)),
    );
    (lhs == first, lhs == second)
}

/// `s ⋆ u` against its pointwise reading `(a, b) ↦ s(a, b + u(a)) − s(a, b)`.
pub fn star_pointwise(s: &Map, u: &Map, a: &FinGroup, b: &FinGroup) -> bool {
    let ab = prod(a, b);
    let direct = Map::from_fn(&ab, &s.cod, |p| {
        let (x, y) = (p % a.size(), p / a.size());
        let shifted = x + a.size() * b.add(y, u.apply(x));
        s.cod.sub(s.apply(shifted), s.apply(p))
    });
    Map::star(s, u, a, b) == direct
}

/// The three star-evaluation identities for `f : (A×B)×C → D`,
/// `e : A×B → C`, `g : A → B` and `g′ : A×B → B`.
pub fn lambda_star_ev(
    f: &Map,
    e: &Map,
    g: &Map,
    g2: &Map,
    a: &FinGroup,
    b: &FinGroup,
    c: &FinGroup,
) -> (bool, bool, bool) {
    let ab = prod(a, b);
    let dd = &f.cod;
    let ev = Map::ev(c, dd);
    let lf = Map::curry(f, &ab, c);
    let p1 = Map::proj1(a, b);
    let p2 = Map::proj2(a, b);
    let g1 = Map::then(&p1, g);
    let e_star_g = Map::star(e, g, a, b);

    let lhs_i = Map::star(&Map::then(&Map::pair(&lf, e), &ev), g, a, b);
    let rhs_i = Map::add(
        &Map::then(
            &Map::pair(&Map::curry(&Map::star(f, &e_star_g, &ab, c), &ab, c), e),
            &ev,
        ),
        &Map::then(
            &Map::pair(
                &Map::star(&lf, g, a, b),
                &Map::then(&Map::pair(&p1, &Map::add(&p2, &Map::eps(&g1))), e),
            ),
            &ev,
        ),
    );

    let f_star_e = Map::star(f, e, &ab, c);
    let lhs_ii = Map::star(&Map::curry(&f_star_e, &ab, c), g, a, b);
    let shift = Map::add(&Map::id(&ab), &Map::pair(&Map::zero(&ab, a), &Map::eps(&g1)));
    let part1 = Map::star(
        &Map::uncurry(&Map::star(&lf, g, a, b), c, dd),
        &Map::then(&shift, e),
        &ab,
        c,
    );
    let part2 = Map::star(&Map::eps(&f_star_e), &e_star_g, &ab, c);
    let part3 = Map::star(f, &e_star_g, &ab, c);
    let rhs_ii = Map::curry(&Map::add(&Map::add(&part1, &part2), &part3), &ab, c);

    let reindex = Map::pair(&p1, g2);
    let lhs_iii = Map::then(&reindex, &Map::curry(&f_star_e, &ab, c));
    let rhs_iii = Map::curry(
        &Map::star(
            &Map::uncurry(&Map::then(&reindex, &lf), c, dd),
            &Map::then(&reindex, e),
            &ab,
            c,
        ),
        &ab,
        c,
    );
    (lhs_i == rhs_i, lhs_ii == rhs_ii, lhs_iii == rhs_iii)
}

/// L1, L2, evaluation-derivative, star and star-evaluation identities
/// with `A`, `B`, `C` as given and `D = C`.
pub fn check_lambda_axioms(
    a: &FinGroup,
    b: &FinGroup,
    c: &FinGroup,
    budget: usize,
    seed: u64,
) -> AxiomReport {
    let ab = prod(a, b);
    let abc = prod(&ab, c);
    let f2 = (ab.clone(), c.clone());
    let f3 = (abc, c.clone());
    let e_ab = (ab.clone(), c.clone());
    let g_ab = (a.clone(), b.clone());
    let g2 = (ab.clone(), b.clone());
    let checks = vec![
        run("L1", &[f2.clone()], budget, seed, |m| l1(&m[0], a, b)),
        run("L2", &[f2.clone()], budget, seed, |m| l2(&m[0], a, b)),
        run("lambda-d-ev.i", &[f2.clone(), g_ab.clone()], budget, seed, |m| {
            lambda_d_ev(&m[0], &m[1], a, b).0
        }),
        run("lambda-d-ev.ii", &[f2.clone(), g_ab.clone()], budget, seed, |m| {
            lambda_d_ev(&m[0], &m[1], a, b).1
        }),
        run("star", &[f2, g_ab.clone()], budget, seed, |m| {
            star_pointwise(&m[0], &m[1], a, b)
        }),
        run(
            "lambda-star-ev.i",
            &[f3.clone(), e_ab.clone(), g_ab.clone()],
            budget,
            seed,
            |m| lambda_star_ev(&m[0], &m[1], &m[2], &Map::zero(&ab, b), a, b, c).0,
        ),
        run(
            "lambda-star-ev.ii",
            &[f3.clone(), e_ab.clone(), g_ab],
            budget,
            seed,
            |m| lambda_star_ev(&m[0], &m[1], &m[2], &Map::zero(&ab, b), a, b, c).1,
        ),
        run("lambda-star-ev.iii", &[f3, e_ab, g2], budget, seed, |m| {
            let g = Map::zero(a, b);
            lambda_star_ev(&m[0], &m[1], &g, &m[2], a, b, c).2
        }),
    ];
    AxiomReport {
        title: format!("difference lambda-category laws over A = {a}, B = {b}, C = D = {c}"),
        checks,
    }
}
