//! Finite Abelian groups and arbitrary maps between their carriers, with
//! the Cartesian closed and difference structure of the Ab model.
//!
//! Elements are ordinals in mixed radix over the cyclic factors, least
//! significant factor first; a pair `(a, b)` in `A × B` is `a + |A|·b`.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinGroup {
    moduli: Vec<u32>,
}

impl FinGroup {
    /// The one-element group.
    pub fn terminal() -> Self {
        FinGroup { moduli: Vec::new() }
    }

    pub fn cyclic(n: u32) -> Self {
        assert!(n >= 1, "modulus must be positive");
        FinGroup { moduli: vec![n] }
    }

    pub fn product(a: &FinGroup, b: &FinGroup) -> Self {
        let mut moduli = a.moduli.clone();
        moduli.extend(&b.moduli);
        FinGroup { moduli }
    }

    /// `B ⇒ C`: all functions, with pointwise addition.
    pub fn exp(b: &FinGroup, c: &FinGroup) -> Self {
        let mut moduli = Vec::new();
        for _ in 0..b.size() {
            moduli.extend(&c.moduli);
        }
        FinGroup { moduli }
    }

    pub fn size(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    fn digits(&self, mut x: usize) -> Vec<u32> {
        self.moduli
            .iter()
            .map(|&m| {
                let d = (x % m as usize) as u32;
                x /= m as usize;
                d
            })
            .collect()
    }

    fn from_digits(&self, ds: &[u32]) -> usize {
        let mut acc = 0usize;
        for (&d, &m) in ds.iter().zip(&self.moduli).rev() {
            acc = acc * m as usize + d as usize;
        }
        acc
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (dx, dy) = (self.digits(x), self.digits(y));
        let ds: Vec<u32> = dx
            .iter()
            .zip(&dy)
            .zip(&self.moduli)
            .map(|((a, b), m)| (a + b) % m)
            .collect();
        self.from_digits(&ds)
    }

    pub fn neg(&self, x: usize) -> usize {
        let ds: Vec<u32> = self
            .digits(x)
            .iter()
            .zip(&self.moduli)
            .map(|(a, m)| (m - a) % m)
            .collect();
        self.from_digits(&ds)
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }
}

impl fmt::Display for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z{m}")).collect();
        f.write_str(&parts.join("×"))
    }
}

/// Pair ordinal in `A × B`.
fn pair_ord(a: &FinGroup, x: usize, y: usize) -> usize {
    x + a.size() * y
}

fn split_ord(a: &FinGroup, p: usize) -> (usize, usize) {
    (p % a.size(), p / a.size())
}

/// A map given by its full table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Map {
    pub dom: FinGroup,
    pub cod: FinGroup,
    table: Vec<usize>,
}

impl Map {
    pub fn from_fn(dom: &FinGroup, cod: &FinGroup, f: impl Fn(usize) -> usize) -> Map {
        Map {
            dom: dom.clone(),
            cod: cod.clone(),
            table: dom.elements().map(f).collect(),
        }
    }

    /// The `index`-th map in the enumeration of `cod^dom`.
    pub fn nth(dom: &FinGroup, cod: &FinGroup, mut index: u128) -> Map {
        let c = cod.size() as u128;
        let table = dom
            .elements()
            .map(|_| {
                let d = (index % c) as usize;
                index /= c;
                d
            })
            .collect();
        Map::from_table(dom, cod, table)
    }

    pub fn from_table(dom: &FinGroup, cod: &FinGroup, table: Vec<usize>) -> Map {
        assert_eq!(table.len(), dom.size());
        Map {
            dom: dom.clone(),
            cod: cod.clone(),
            table,
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn id(a: &FinGroup) -> Map {
        Map::from_fn(a, a, |x| x)
    }

    pub fn zero(a: &FinGroup, b: &FinGroup) -> Map {
        Map::from_fn(a, b, |_| 0)
    }

    /// `!_A : A → 1`.
    pub fn bang(a: &FinGroup) -> Map {
        Map::zero(a, &FinGroup::terminal())
    }

    pub fn proj1(a: &FinGroup, b: &FinGroup) -> Map {
        Map::from_fn(&FinGroup::product(a, b), a, |p| split_ord(a, p).0)
    }

    pub fn proj2(a: &FinGroup, b: &FinGroup) -> Map {
        Map::from_fn(&FinGroup::product(a, b), b, |p| split_ord(a, p).1)
    }

    /// `⟨f, g⟩`.
    pub fn pair(f: &Map, g: &Map) -> Map {
        assert_eq!(f.dom, g.dom);
        Map::from_fn(&f.dom, &FinGroup::product(&f.cod, &g.cod), |x| {
            pair_ord(&f.cod, f.apply(x), g.apply(x))
        })
    }

    /// `g ∘ f`.
    pub fn then(f: &Map, g: &Map) -> Map {
        assert_eq!(f.cod, g.dom);
        Map::from_fn(&f.dom, &g.cod, |x| g.apply(f.apply(x)))
    }

    /// `f × g = ⟨f ∘ π₁, g ∘ π₂⟩`.
    pub fn times(f: &Map, g: &Map) -> Map {
        let dom = FinGroup::product(&f.dom, &g.dom);
        Map::from_fn(&dom, &FinGroup::product(&f.cod, &g.cod), |p| {
            let (x, y) = split_ord(&f.dom, p);
            pair_ord(&f.cod, f.apply(x), g.apply(y))
        })
    }

    pub fn add(f: &Map, g: &Map) -> Map {
        assert_eq!(f.dom, g.dom);
        assert_eq!(f.cod, g.cod);
        Map::from_fn(&f.dom, &f.cod, |x| f.cod.add(f.apply(x), g.apply(x)))
    }

    /// Infinitesimal extension; the identity in this model.
    pub fn eps(f: &Map) -> Map {
        f.clone()
    }

    /// `∂f(x, u) = f(x + u) − f(x)`.
    pub fn derivative(f: &Map) -> Map {
        let a = &f.dom;
        Map::from_fn(&FinGroup::product(a, a), &f.cod, |p| {
            let (x, u) = split_ord(a, p);
            f.cod.sub(f.apply(a.add(x, u)), f.apply(x))
        })
    }

    /// `Λ(f) : A → (B ⇒ C)` for `f : A × B → C`.
    pub fn curry(f: &Map, a: &FinGroup, b: &FinGroup) -> Map {
        assert_eq!(f.dom, FinGroup::product(a, b));
        let exp = FinGroup::exp(b, &f.cod);
        let c = f.cod.size();
        Map::from_fn(a, &exp, |x| {
            let mut acc = 0usize;
            for y in b.elements().rev() {
                acc = acc * c + f.apply(pair_ord(a, x, y));
            }
            acc
        })
    }

    /// `Λ⁻(h) : A × B → C` for `h : A → (B ⇒ C)`.
    pub fn uncurry(h: &Map, b: &FinGroup, c: &FinGroup) -> Map {
        assert_eq!(h.cod, FinGroup::exp(b, c));
        let a = h.dom.clone();
        Map::from_fn(&FinGroup::product(&a, b), c, |p| {
            let (x, y) = split_ord(&a, p);
            exp_apply(c, h.apply(x), y)
        })
    }

    /// `ev : (B ⇒ C) × B → C`.
    pub fn ev(b: &FinGroup, c: &FinGroup) -> Map {
        let exp = FinGroup::exp(b, c);
        Map::from_fn(&FinGroup::product(&exp, b), c, |p| {
            let (h, y) = split_ord(&exp, p);
            exp_apply(c, h, y)
        })
    }

    /// `s ⋆ u = ∂s ∘ ⟨Id, ⟨0, u ∘ π₁⟩⟩` for `s : A × B → C`, `u : A → B`.
    pub fn star(s: &Map, u: &Map, a: &FinGroup, b: &FinGroup) -> Map {
        let ab = FinGroup::product(a, b);
        assert_eq!(s.dom, ab);
        let inner = Map::pair(
            &Map::zero(&ab, a),
            &Map::then(&Map::proj1(a, b), u),
        );
        Map::then(&Map::pair(&Map::id(&ab), &inner), &Map::derivative(s))
    }
}

/// Value at `y` of the function with ordinal `h` in `B ⇒ C`.
fn exp_apply(c: &FinGroup, h: usize, y: usize) -> usize {
    (h / c.size().pow(y as u32)) % c.size()
}
