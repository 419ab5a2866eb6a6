use std::collections::HashMap;
use std::sync::Arc;

use super::space::{
    algebra_degeneracy, algebra_face, check_level, Basis, BlockCache, Map, MapKind, SimplicialAlgebra, SimplicialSpace,
    Truncation,
};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};
use crate::freealg::{Element, Generator, Term};

type Key = (usize, usize, Arc<str>);

/// A simplicial algebra given by finite tables: generators per degree, faces,
/// degeneracies and products on generators. Entries not listed are zero.
pub struct ExplicitAlgebra {
    name: String,
    field: Field,
    truncation: Truncation,
    graded: bool,
    levels: Vec<Vec<Generator>>,
    lookup: HashMap<(usize, Arc<str>), Generator>,
    faces: HashMap<Key, Element>,
    degeneracies: HashMap<Key, Element>,
    products: HashMap<(usize, Arc<str>, Arc<str>), Element>,
    cache: BlockCache,
}

pub struct ExplicitBuilder {
    alg: ExplicitAlgebra,
}

impl ExplicitAlgebra {
    pub fn builder(name: &str, field: Field, truncation: Truncation, graded: bool) -> ExplicitBuilder {
        ExplicitBuilder {
            alg: ExplicitAlgebra {
                name: name.to_string(),
                field,
                truncation,
                graded,
                levels: vec![Vec::new(); truncation.max_degree + 1],
                lookup: HashMap::new(),
                faces: HashMap::new(),
                degeneracies: HashMap::new(),
                products: HashMap::new(),
                cache: BlockCache::default(),
            },
        }
    }

    pub fn generators(&self, n: usize) -> &[Generator] {
        self.levels.get(n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn generator(&self, n: usize, symbol: &str) -> Option<&Generator> {
        self.lookup.get(&(n, Arc::from(symbol)))
    }

    /// Face of a generator as recorded in the table.
    pub fn face_of(&self, i: usize, n: usize, symbol: &str) -> Element {
        self.faces.get(&(i, n, Arc::from(symbol))).cloned().unwrap_or_default()
    }

    pub fn degeneracy_of(&self, i: usize, n: usize, symbol: &str) -> Element {
        self.degeneracies.get(&(i, n, Arc::from(symbol))).cloned().unwrap_or_default()
    }

    pub fn product_of(&self, n: usize, a: &str, b: &str) -> Element {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.products.get(&(n, Arc::from(a), Arc::from(b))).cloned().unwrap_or_default()
    }

    /// Products recorded in the table, each unordered pair once.
    pub fn product_entries(&self) -> Vec<(usize, Arc<str>, Arc<str>, &Element)> {
        let mut v: Vec<_> = self.products.iter().map(|((n, a, b), e)| (*n, a.clone(), b.clone(), e)).collect();
        v.sort_by(|x, y| (x.0, &x.1, &x.2).cmp(&(y.0, &y.1, &y.2)));
        v
    }

    fn leaf_symbol<'a>(&self, t: &'a Term) -> Result<&'a Generator> {
        match t {
            Term::Leaf(g) => Ok(g),
            Term::Node(_) => Err(Error::LayerOutOfRange(format!("{t} is not a generator of {}", self.name))),
        }
    }

    /// Replaces one face entry; used to build mutation fixtures.
    pub fn with_face(mut self, i: usize, n: usize, symbol: &str, image: Element) -> Self {
        self.faces.insert((i, n, Arc::from(symbol)), image);
        self.cache = BlockCache::default();
        self
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

impl ExplicitBuilder {
    pub fn field(&self) -> Field {
        self.alg.field
    }

    pub fn generator(&mut self, degree: usize, symbol: &str, weight: Option<usize>) -> Result<&mut Self> {
        let a = &mut self.alg;
        if degree > a.truncation.max_degree {
            return Err(Error::Truncation(format!(
                "generator {symbol} has degree {degree} beyond the truncation degree {}",
                a.truncation.max_degree
            )));
        }
        let weight = match (a.graded, weight) {
            (true, Some(w)) if w >= 1 => {
                if w > a.truncation.max_weight {
                    return Err(Error::Truncation(format!(
                        "generator {symbol} has weight {w} beyond the truncation weight {}",
                        a.truncation.max_weight
                    )));
                }
                w
            }
            (true, Some(_)) => return Err(Error::InvalidArgument(format!("generator {symbol} needs weight ≥ 1"))),
            (true, None) => {
                return Err(Error::InvalidArgument(format!("generator {symbol} has no weight in a graded input")))
            }
            (false, None) => 0,
            (false, Some(_)) => {
                return Err(Error::InvalidArgument(format!("generator {symbol} has a weight in an ungraded input")))
            }
        };
        let g = Generator::new(symbol, degree, weight);
        if a.lookup.insert((degree, g.symbol.clone()), g.clone()).is_some() {
            return Err(Error::InvalidArgument(format!("generator {symbol} declared twice in degree {degree}")));
        }
        let level = &mut a.levels[degree];
        let pos = level.binary_search(&g).unwrap_err();
        level.insert(pos, g);
        Ok(self)
    }

    fn resolve(&self, n: usize, combo: &[(String, Scalar)]) -> Result<Element> {
        let mut e = Element::zero();
        for (s, c) in combo {
            let g = self
                .alg
                .generator(n, s)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown generator {s} in degree {n}")))?;
            e.add_term(Term::Leaf(g.clone()), c.clone());
        }
        Ok(e)
    }

    fn known(&self, n: usize, symbol: &str) -> Result<Arc<str>> {
        self.alg
            .generator(n, symbol)
            .map(|g| g.symbol.clone())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown generator {symbol} in degree {n}")))
    }

    pub fn face(&mut self, i: usize, n: usize, symbol: &str, image: &[(String, Scalar)]) -> Result<&mut Self> {
        if n == 0 || i > n {
            return Err(Error::InvalidArgument(format!("no face d_{i} out of degree {n}")));
        }
        let s = self.known(n, symbol)?;
        let e = self.resolve(n - 1, image)?;
        if self.alg.faces.insert((i, n, s), e).is_some() {
            return Err(Error::InvalidArgument(format!("face d_{i} of {symbol} in degree {n} given twice")));
        }
        Ok(self)
    }

    pub fn degeneracy(&mut self, i: usize, n: usize, symbol: &str, image: &[(String, Scalar)]) -> Result<&mut Self> {
        if i > n || n + 1 > self.alg.truncation.max_degree {
            return Err(Error::InvalidArgument(format!("no degeneracy s_{i} out of degree {n} within the truncation")));
        }
        let s = self.known(n, symbol)?;
        let e = self.resolve(n + 1, image)?;
        if self.alg.degeneracies.insert((i, n, s), e).is_some() {
            return Err(Error::InvalidArgument(format!("degeneracy s_{i} of {symbol} in degree {n} given twice")));
        }
        Ok(self)
    }

    /// Records `a·b` (and hence `b·a`).
    pub fn product(&mut self, n: usize, a: &str, b: &str, image: &[(String, Scalar)]) -> Result<&mut Self> {
        let a = self.known(n, a)?;
        let b = self.known(n, b)?;
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let e = self.resolve(n, image)?;
        if self.alg.products.insert((n, a.clone(), b.clone()), e).is_some() {
            return Err(Error::InvalidArgument(format!("product {a}·{b} in degree {n} given twice")));
        }
        Ok(self)
    }

    pub fn build(self) -> ExplicitAlgebra {
        self.alg
    }
}

impl SimplicialSpace for ExplicitAlgebra {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn field(&self) -> Field {
        self.field
    }

    fn truncation(&self) -> Truncation {
        self.truncation
    }

    fn graded(&self) -> bool {
        self.graded
    }

    fn basis(&self, n: usize, w: usize) -> Result<Arc<Basis>> {
        check_level(self, n)?;
        self.cache.basis(n, w, || {
            Basis::new(self.levels[n].iter().filter(|g| g.weight == w).map(|g| Term::Leaf(g.clone())).collect())
        })
    }

    fn face(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        self.cache.map(MapKind::Face, i, n, w, || algebra_face(self, i, n, w))
    }

    fn degeneracy(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        self.cache.map(MapKind::Degeneracy, i, n, w, || algebra_degeneracy(self, i, n, w))
    }
}

impl SimplicialAlgebra for ExplicitAlgebra {
    fn face_term(&self, i: usize, n: usize, t: &Term) -> Result<Element> {
        let g = self.leaf_symbol(t)?;
        Ok(self.faces.get(&(i, n, g.symbol.clone())).cloned().unwrap_or_default())
    }

    fn degeneracy_term(&self, i: usize, n: usize, t: &Term) -> Result<Element> {
        let g = self.leaf_symbol(t)?;
        Ok(self.degeneracies.get(&(i, n, g.symbol.clone())).cloned().unwrap_or_default())
    }

    fn product(&self, n: usize, factors: &[Term]) -> Result<Element> {
        let Some((first, rest)) = factors.split_first() else {
            return Err(Error::EmptyMultiset);
        };
        self.leaf_symbol(first)?;
        let mut acc = Element::term(first.clone(), self.field);
        for f in rest {
            let b = self.leaf_symbol(f)?;
            let mut next = Element::zero();
            for (t, c) in acc.iter() {
                let a = self.leaf_symbol(t)?;
                next.add_scaled(c, &self.product_of(n, &a.symbol, &b.symbol));
            }
            acc = next;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}

/// Direct sum with zero products between the summands; symbols must not collide.
pub fn direct_sum(name: &str, a: &ExplicitAlgebra, b: &ExplicitAlgebra) -> Result<ExplicitAlgebra> {
    if a.field != b.field || a.truncation != b.truncation || a.graded != b.graded {
        return Err(Error::InvalidArgument("direct sum of algebras with different configuration".into()));
    }
    let mut out = ExplicitAlgebra::builder(name, a.field, a.truncation, a.graded).build();
    for src in [a, b] {
        for (n, level) in src.levels.iter().enumerate() {
            for g in level {
                if out.lookup.insert((n, g.symbol.clone()), g.clone()).is_some() {
                    return Err(Error::InvalidArgument(format!("symbol {} occurs in both summands", g.symbol)));
                }
                out.levels[n].push(g.clone());
            }
        }
        out.faces.extend(src.faces.iter().map(|(k, v)| (k.clone(), v.clone())));
        out.degeneracies.extend(src.degeneracies.iter().map(|(k, v)| (k.clone(), v.clone())));
        out.products.extend(src.products.iter().map(|(k, v)| (k.clone(), v.clone())));
    }
    for level in &mut out.levels {
        level.sort();
    }
    Ok(out)
}
