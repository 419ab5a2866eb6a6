use std::sync::Arc;

use rayon::prelude::*;

use super::space::{Basis, BlockCache, Map, MapKind, SimplicialSpace, Truncation};
use crate::error::{Error, Result};
use crate::exactlin::{Field, LinearMap, SparseVec, Subspace};
use crate::freealg::{Element, Term};

/// Supplies the subspace of one parent block, in parent coordinates.
pub type SubspaceProvider = dyn Fn(usize, usize) -> Result<Subspace> + Send + Sync;

/// A simplicial subspace cut out blockwise from a parent.
///
/// Each block is stored in reduced echelon form; its basis is labelled by the
/// parent labels at the pivots, so coordinate subspaces keep their labels.
pub struct SubObject {
    name: String,
    parent: Arc<dyn SimplicialSpace>,
    provider: Box<SubspaceProvider>,
    blocks: BlockCache,
}

impl SubObject {
    pub fn new(
        name: &str,
        parent: Arc<dyn SimplicialSpace>,
        provider: impl Fn(usize, usize) -> Result<Subspace> + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.to_string(), parent, provider: Box::new(provider), blocks: BlockCache::default() }
    }

    /// Sub-object spanned by the parent basis terms satisfying `keep(n, term)`.
    pub fn coordinate(
        name: &str,
        parent: Arc<dyn SimplicialSpace>,
        keep: impl Fn(usize, &Term) -> bool + Send + Sync + 'static,
    ) -> Self {
        let p = parent.clone();
        Self::new(name, parent, move |n, w| {
            let b = p.basis(n, w)?;
            let idx = b.labels().iter().enumerate().filter(|(_, t)| keep(n, t)).map(|(k, _)| k);
            Ok(Subspace::from_unit_indices(p.field(), b.len(), idx.collect::<Vec<_>>()))
        })
    }

    pub fn parent(&self) -> &Arc<dyn SimplicialSpace> {
        &self.parent
    }

    /// The block in parent coordinates.
    pub fn subspace(&self, n: usize, w: usize) -> Result<Arc<Subspace>> {
        self.blocks.subspace(n, w, || {
            let s = (self.provider)(n, w)?;
            let ambient = self.parent.basis(n, w)?.len();
            if s.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "{}: block ({n}, {w}) has ambient dimension {} but the parent has {ambient}",
                    self.name,
                    s.ambient_dim()
                )));
            }
            Ok(s)
        })
    }

    /// The inclusion of one block into the parent.
    pub fn inclusion(&self, n: usize, w: usize) -> Result<Map> {
        let s = self.subspace(n, w)?;
        LinearMap::new(self.field(), self.basis(n, w)?, self.parent.basis(n, w)?, s.rows().to_vec())
    }

    /// Coordinates of a parent vector, or a containment error naming it.
    pub fn coordinates(&self, n: usize, w: usize, v: &SparseVec) -> Result<SparseVec> {
        let s = self.subspace(n, w)?;
        s.coordinates(v).ok_or_else(|| {
            let shown = self.parent.basis(n, w).map(|b| b.render(v)).unwrap_or_default();
            Error::Containment(format!("{} does not lie in {} (degree {n}, weight {w})", shown, self.name))
        })
    }

    fn induced(&self, n: usize, m: usize, w: usize, parent_map: &Map, what: &str) -> Result<Map> {
        let s = self.subspace(n, w)?;
        let columns = s
            .rows()
            .iter()
            .map(|r| {
                let image = parent_map.apply(r);
                self.coordinates(m, w, &image).map_err(|e| match e {
                    Error::Containment(msg) => Error::Containment(format!("{what}: {msg}")),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        LinearMap::new(self.field(), self.basis(n, w)?, self.basis(m, w)?, columns)
    }
}

impl SimplicialSpace for SubObject {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn field(&self) -> Field {
        self.parent.field()
    }

    fn truncation(&self) -> Truncation {
        self.parent.truncation()
    }

    fn graded(&self) -> bool {
        self.parent.graded()
    }

    fn basis(&self, n: usize, w: usize) -> Result<Arc<Basis>> {
        let s = self.subspace(n, w)?;
        let parent = self.parent.basis(n, w)?;
        self.blocks.basis(n, w, || Basis::new(s.pivots().iter().map(|&p| parent.label(p).clone()).collect()))
    }

    fn face(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        self.blocks.map(MapKind::Face, i, n, w, || {
            let d = self.parent.face(i, n, w)?;
            self.induced(n, n - 1, w, &d, &format!("d_{i} out of degree {n}"))
        })
    }

    fn degeneracy(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        self.blocks.map(MapKind::Degeneracy, i, n, w, || {
            let s = self.parent.degeneracy(i, n, w)?;
            self.induced(n, n + 1, w, &s, &format!("s_{i} out of degree {n}"))
        })
    }
}

/// Restricts a parent-level map `f: P_n → P'_n` to sub-objects on both sides.
pub fn restrict_map(f: &Map, src: &SubObject, tgt: &SubObject, n: usize, w: usize) -> Result<Map> {
    let s = src.subspace(n, w)?;
    let columns = s.rows().iter().map(|r| tgt.coordinates(n, w, &f.apply(r))).collect::<Result<Vec<_>>>()?;
    LinearMap::new(f.field(), src.basis(n, w)?, tgt.basis(n, w)?, columns)
}

/// The restriction `src_n → tgt_m` of a term-level map between the parents,
/// evaluated only on the terms the source rows involve.
pub fn restrict_terms(
    src: &SubObject,
    tgt: &SubObject,
    n: usize,
    m: usize,
    w: usize,
    f: &(dyn Fn(&Term) -> Result<Element> + Sync),
) -> Result<Map> {
    let s = src.subspace(n, w)?;
    let dom = src.basis(n, w)?;
    let cod = tgt.basis(m, w)?;
    if s.dim() == 0 {
        return Ok(LinearMap::zero(src.field(), dom, cod));
    }
    let pdom = src.parent.basis(n, w)?;
    let pcod = tgt.parent.basis(m, w)?;
    let field = src.field();
    let columns = s
        .rows()
        .par_iter()
        .map(|r| {
            let mut image = Element::zero();
            for (k, c) in r.entries() {
                image.add_scaled(c, &f(pdom.label(*k))?);
            }
            let v = pcod.vector(image.into_vec())?;
            tgt.coordinates(m, w, &v)
        })
        .collect::<Result<Vec<_>>>()?;
    LinearMap::new(field, dom, cod, columns)
}

/// `big / small` for two coordinate sub-objects of one parent with
/// `small ⊆ big` blockwise; the basis is the terms of `big` not in `small`.
pub struct CoordinateSubquotient {
    name: String,
    big: Arc<SubObject>,
    small: Arc<SubObject>,
    blocks: BlockCache,
}

impl CoordinateSubquotient {
    pub fn new(name: &str, big: Arc<SubObject>, small: Arc<SubObject>) -> Self {
        Self { name: name.to_string(), big, small, blocks: BlockCache::default() }
    }

    fn check(&self, n: usize, w: usize) -> Result<(Arc<Subspace>, Arc<Subspace>)> {
        let b = self.big.subspace(n, w)?;
        let s = self.small.subspace(n, w)?;
        if !b.is_coordinate() || !s.is_coordinate() || !s.is_subspace_of(&b) {
            return Err(Error::InvalidArgument(format!(
                "{}: block ({n}, {w}) is not a quotient of coordinate subspaces",
                self.name
            )));
        }
        Ok((b, s))
    }

    fn structure_map(&self, n: usize, m: usize, w: usize, parent_map: &Map) -> Result<Map> {
        let dom = self.basis(n, w)?;
        let cod = self.basis(m, w)?;
        let (_, small) = self.check(m, w)?;
        let pbasis = self.big.parent().basis(n, w)?;
        let pcod = self.big.parent().basis(m, w)?;
        let big_m = self.big.subspace(m, w)?;
        let field = self.field();
        let columns = dom
            .labels()
            .iter()
            .map(|t| {
                let k = pbasis.index_of(t).expect("quotient label comes from the parent");
                let image = parent_map.column(k);
                if !big_m.contains(image) {
                    return Err(Error::Containment(format!("{}: image of {t} leaves the filtration", self.name)));
                }
                let kept = image.entries().iter().filter(|(p, _)| small.pivots().binary_search(p).is_err());
                cod.vector(kept.map(|(p, c)| (pcod.label(*p).clone(), c.clone())))
            })
            .collect::<Result<Vec<_>>>()?;
        LinearMap::new(field, dom, cod, columns)
    }
}

impl SimplicialSpace for CoordinateSubquotient {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn field(&self) -> Field {
        self.big.field()
    }

    fn truncation(&self) -> Truncation {
        self.big.truncation()
    }

    fn graded(&self) -> bool {
        self.big.graded()
    }

    fn basis(&self, n: usize, w: usize) -> Result<Arc<Basis>> {
        let (b, s) = self.check(n, w)?;
        let parent = self.big.parent().basis(n, w)?;
        self.blocks.basis(n, w, || {
            Basis::new(b.pivots().iter().filter(|p| s.pivots().binary_search(p).is_err()).map(|&p| parent.label(p).clone()).collect())
        })
    }

    fn face(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        self.blocks.map(MapKind::Face, i, n, w, || {
            let d = self.big.parent().face(i, n, w)?;
            self.structure_map(n, n - 1, w, &d)
        })
    }

    fn degeneracy(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        self.blocks.map(MapKind::Degeneracy, i, n, w, || {
            let s = self.big.parent().degeneracy(i, n, w)?;
            self.structure_map(n, n + 1, w, &s)
        })
    }
}
