use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{Field, LabeledBasis, LinearMap, Subspace};
use crate::freealg::{Element, Term};

pub type Basis = LabeledBasis<Term>;
pub type Map = LinearMap<Term>;

/// Maximal simplicial degree and weight that are realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub max_degree: usize,
    pub max_weight: usize,
}

impl Truncation {
    pub fn new(max_degree: usize, max_weight: usize) -> Self {
        Self { max_degree, max_weight }
    }
}

/// A truncated simplicial vector space, split into finite (degree, weight) blocks.
pub trait SimplicialSpace: Send + Sync {
    fn name(&self) -> String;
    fn field(&self) -> Field;
    fn truncation(&self) -> Truncation;

    fn graded(&self) -> bool {
        true
    }

    /// The weight blocks; an ungraded space has the single block `0`.
    fn weights(&self) -> Vec<usize> {
        if self.graded() {
            (1..=self.truncation().max_weight).collect()
        } else {
            vec![0]
        }
    }

    fn basis(&self, n: usize, w: usize) -> Result<Arc<Basis>>;

    /// `d_i: X_n → X_{n-1}` on the weight-`w` block.
    fn face(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>>;

    /// `s_i: X_n → X_{n+1}` on the weight-`w` block.
    fn degeneracy(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>>;
}

/// A simplicial algebra whose structure is given on basis terms.
pub trait SimplicialAlgebra: SimplicialSpace {
    fn face_term(&self, i: usize, n: usize, t: &Term) -> Result<Element>;
    fn degeneracy_term(&self, i: usize, n: usize, t: &Term) -> Result<Element>;

    /// Product of a nonempty list of level-`n` basis terms.
    fn product(&self, n: usize, factors: &[Term]) -> Result<Element>;

    /// Number of factors, when the basis is made of monomials closed under products.
    fn monomial_degree(&self, _t: &Term) -> Option<usize> {
        None
    }

    /// Cheap upper bound on the size of a block, used to refuse huge blocks
    /// before enumerating them.
    fn block_estimate(&self, n: usize, w: usize) -> Result<u128> {
        Ok(self.basis(n, w)?.len() as u128)
    }

    /// The power `P^s` on one block, when it has a direct description.
    fn power_block(&self, _s: usize, _n: usize, _w: usize) -> Result<Option<Subspace>> {
        Ok(None)
    }
}

pub fn check_level(space: &dyn SimplicialSpace, n: usize) -> Result<()> {
    let t = space.truncation();
    if n > t.max_degree {
        return Err(Error::Truncation(format!(
            "{}: degree {n} exceeds the truncation degree {}",
            space.name(),
            t.max_degree
        )));
    }
    Ok(())
}

pub fn check_face(space: &dyn SimplicialSpace, i: usize, n: usize) -> Result<()> {
    check_level(space, n)?;
    if n == 0 || i > n {
        return Err(Error::InvalidArgument(format!("no face d_{i} out of degree {n}")));
    }
    Ok(())
}

pub fn check_degeneracy(space: &dyn SimplicialSpace, i: usize, n: usize) -> Result<()> {
    check_level(space, n + 1)?;
    if i > n {
        return Err(Error::InvalidArgument(format!("no degeneracy s_{i} out of degree {n}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Face,
    Degeneracy,
}

/// Build-once caches for realized blocks. Racing builders produce equal
/// values, so whichever insert wins is kept.
#[derive(Default)]
pub struct BlockCache {
    bases: Mutex<HashMap<(usize, usize), Arc<Basis>>>,
    maps: Mutex<HashMap<(MapKind, usize, usize, usize), Arc<Map>>>,
    subspaces: Mutex<HashMap<(usize, usize), Arc<Subspace>>>,
}

impl BlockCache {
    pub fn basis(&self, n: usize, w: usize, build: impl FnOnce() -> Result<Basis>) -> Result<Arc<Basis>> {
        if let Some(b) = self.bases.lock().unwrap().get(&(n, w)) {
            return Ok(b.clone());
        }
        let b = Arc::new(build()?);
        Ok(self.bases.lock().unwrap().entry((n, w)).or_insert(b).clone())
    }

    pub fn map(
        &self,
        kind: MapKind,
        i: usize,
        n: usize,
        w: usize,
        build: impl FnOnce() -> Result<Map>,
    ) -> Result<Arc<Map>> {
        let key = (kind, i, n, w);
        if let Some(m) = self.maps.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(build()?);
        Ok(self.maps.lock().unwrap().entry(key).or_insert(m).clone())
    }

    pub fn subspace(&self, n: usize, w: usize, build: impl FnOnce() -> Result<Subspace>) -> Result<Arc<Subspace>> {
        if let Some(s) = self.subspaces.lock().unwrap().get(&(n, w)) {
            return Ok(s.clone());
        }
        let s = Arc::new(build()?);
        Ok(self.subspaces.lock().unwrap().entry((n, w)).or_insert(s).clone())
    }
}

/// Matrix of a term-level linear map between two blocks.
pub fn term_map(
    field: Field,
    domain: Arc<Basis>,
    codomain: Arc<Basis>,
    f: &(dyn Fn(&Term) -> Result<Element> + Sync),
) -> Result<Map> {
    let columns = domain
        .labels()
        .par_iter()
        .map(|t| {
            let image = f(t)?;
            codomain.vector(image.into_vec()).map_err(|e| match e {
                Error::LabelMismatch(m) => Error::LabelMismatch(format!("image of {t}: {m}")),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LinearMap::new(field, domain, codomain, columns)
}

/// Face matrix of a term-level algebra.
pub fn algebra_face(alg: &dyn SimplicialAlgebra, i: usize, n: usize, w: usize) -> Result<Map> {
    check_face(alg, i, n)?;
    let dom = alg.basis(n, w)?;
    let cod = alg.basis(n - 1, w)?;
    term_map(alg.field(), dom, cod, &|t| alg.face_term(i, n, t))
}

pub fn algebra_degeneracy(alg: &dyn SimplicialAlgebra, i: usize, n: usize, w: usize) -> Result<Map> {
    check_degeneracy(alg, i, n)?;
    let dom = alg.basis(n, w)?;
    let cod = alg.basis(n + 1, w)?;
    term_map(alg.field(), dom, cod, &|t| alg.degeneracy_term(i, n, t))
}

/// Block inclusion of one level into a full level of another space with the same labels.
pub fn label_map(
    field: Field,
    domain: Arc<Basis>,
    codomain: Arc<Basis>,
    f: impl Fn(&Term) -> Option<Term>,
) -> Result<Map> {
    LinearMap::from_fn(field, domain, codomain, |t| Ok(f(t).map(|u| vec![(u, field.one())]).unwrap_or_default()))
}
