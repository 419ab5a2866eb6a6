//! The simplicial bar construction, its iterates, indecomposables, and the
//! homotopy between the two augmentations of the double bar construction.

mod appendix;
mod fused;

use std::sync::Arc;

pub use appendix::*;
pub use fused::*;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Subspace};
use crate::freealg::{counit_at, comult_at, free_counts, free_monomials, free_product, rewrite_element_at, Element, Term};
use crate::simplicial::{
    algebra_degeneracy, algebra_face, check_level, term_map, Basis, BlockCache, Map, MapKind, SimplicialAlgebra,
    SimplicialSpace, Truncation,
};

/// Default bound on the size of one realized block.
pub const DEFAULT_CAP: u128 = 200_000;

/// `(bA)_n = T^{n+1} A_n`: level `n` is the free algebra iterated `n+1` times
/// on `A_n`. Faces and degeneracies combine a layer counit or
/// comultiplication with the matching structure map of `A`.
pub struct Bar {
    base: Arc<dyn SimplicialAlgebra>,
    name: String,
    cap: u128,
    cache: BlockCache,
}

impl Bar {
    pub fn new(base: Arc<dyn SimplicialAlgebra>) -> Result<Self> {
        Self::with_cap(base, DEFAULT_CAP)
    }

    pub fn with_cap(base: Arc<dyn SimplicialAlgebra>, cap: u128) -> Result<Self> {
        if !base.graded() {
            return Err(Error::Ungraded(format!("the bar construction of {} needs a weight grading", base.name())));
        }
        Ok(Self { name: format!("b({})", base.name()), base, cap, cache: BlockCache::default() })
    }

    /// `b^r A` as nested bars; `r = 0` returns `A`.
    pub fn iterate(base: Arc<dyn SimplicialAlgebra>, r: usize, cap: u128) -> Result<Arc<dyn SimplicialAlgebra>> {
        let mut a = base;
        for _ in 0..r {
            a = Arc::new(Bar::with_cap(a, cap)?);
        }
        Ok(a)
    }

    pub fn base(&self) -> &Arc<dyn SimplicialAlgebra> {
        &self.base
    }

    /// Upper bound on the size of block `(n, w)` from the base dimensions.
    pub fn estimate(&self, n: usize, w: usize) -> Result<u128> {
        let mut counts: Vec<u128> = vec![0];
        for v in 1..=w {
            counts.push(self.base_estimate(n, v)?);
        }
        for _ in 0..=n {
            counts = free_counts(&counts, w);
        }
        Ok(counts[w])
    }

    fn base_estimate(&self, n: usize, w: usize) -> Result<u128> {
        self.base.block_estimate(n, w)
    }
}

/// Counit at distance `d` applied `n+1` times: collapses one block of `n+1`
/// layers. The last collapse multiplies with `last`, the others are free.
pub fn collapse_block(t: &Term, d: usize, n: usize, field: Field, last: &crate::freealg::ProductFn) -> Result<Element> {
    let free = |ch: &[Term]| free_product(ch, field);
    let mut e = Element::term(t.clone(), field);
    for k in 0..=n {
        let mul: &crate::freealg::ProductFn = if k == n { last } else { &free };
        let mut next = Element::zero();
        for (u, c) in e.iter() {
            next.add_scaled(c, &counit_at(u, d, field, mul)?);
        }
        e = next;
        if e.is_zero() {
            break;
        }
    }
    Ok(e)
}

/// The augmentation `ε: bA → A`, collapsing all `n+1` layers with `A`'s product.
pub fn augmentation_term(bar: &Bar, n: usize, t: &Term) -> Result<Element> {
    let base = bar.base.clone();
    collapse_block(t, 0, n, bar.field(), &move |ch: &[Term]| base.product(n, ch))
}

pub fn augmentation(bar: &Bar, n: usize, w: usize) -> Result<Map> {
    term_map(bar.field(), bar.basis(n, w)?, bar.base.basis(n, w)?, &|t| augmentation_term(bar, n, t))
}

impl SimplicialSpace for Bar {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn field(&self) -> Field {
        self.base.field()
    }

    fn truncation(&self) -> Truncation {
        self.base.truncation()
    }

    fn basis(&self, n: usize, w: usize) -> Result<Arc<Basis>> {
        check_level(self, n)?;
        self.cache.basis(n, w, || {
            let size = self.estimate(n, w)?;
            if size > self.cap {
                return Err(Error::BlockTooLarge(format!(
                    "{} block (n={n}, w={w}) has {size} basis elements, above the cap {}",
                    self.name, self.cap
                )));
            }
            let mut layer: Vec<Vec<Term>> = vec![Vec::new()];
            for v in 1..=w {
                layer.push(self.base.basis(n, v)?.labels().to_vec());
            }
            for _ in 0..=n {
                layer = free_monomials(&layer, w);
            }
            Basis::new(std::mem::take(&mut layer[w]))
        })
    }

    fn face(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        self.cache.map(MapKind::Face, i, n, w, || algebra_face(self, i, n, w))
    }

    fn degeneracy(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        self.cache.map(MapKind::Degeneracy, i, n, w, || algebra_degeneracy(self, i, n, w))
    }
}

impl SimplicialAlgebra for Bar {
    fn face_term(&self, i: usize, n: usize, t: &Term) -> Result<Element> {
        let field = self.field();
        let collapsed = if i == n {
            counit_at(t, n, field, &|ch: &[Term]| self.base.product(n, ch))?
        } else {
            counit_at(t, i, field, &|ch: &[Term]| free_product(ch, field))?
        };
        rewrite_element_at(&collapsed, n, field, &|a: &Term| self.base.face_term(i, n, a))
    }

    fn degeneracy_term(&self, i: usize, n: usize, t: &Term) -> Result<Element> {
        let field = self.field();
        let split = comult_at(t, i, field)?;
        rewrite_element_at(&split, n + 2, field, &|a: &Term| self.base.degeneracy_term(i, n, a))
    }

    fn product(&self, _n: usize, factors: &[Term]) -> Result<Element> {
        free_product(factors, self.field())
    }

    fn monomial_degree(&self, t: &Term) -> Option<usize> {
        Some(t.top_size())
    }

    fn power_block(&self, s: usize, n: usize, w: usize) -> Result<Option<Subspace>> {
        let b = self.basis(n, w)?;
        let idx: Vec<usize> = (0..b.len()).filter(|&k| b.label(k).top_size() >= s).collect();
        Ok(Some(Subspace::from_unit_indices(self.field(), b.len(), idx)))
    }

    fn block_estimate(&self, n: usize, w: usize) -> Result<u128> {
        self.estimate(n, w)
    }
}

/// `KQ(C)` for an algebra with a monomial basis: the degree-one monomials
/// with zero multiplication.
pub struct Indecomposables {
    parent: Arc<dyn SimplicialAlgebra>,
    name: String,
    cache: BlockCache,
}

impl Indecomposables {
    /// `parent` must report `monomial_degree` on its basis terms.
    pub fn new(parent: Arc<dyn SimplicialAlgebra>) -> Self {
        Self { name: format!("KQ({})", parent.name()), parent, cache: BlockCache::default() }
    }

    fn indecomposable(&self, t: &Term) -> bool {
        self.parent.monomial_degree(t) == Some(1)
    }

    fn project(&self, e: Element) -> Element {
        e.filtered(|t| self.indecomposable(t))
    }

    /// `η: C → KQ(C)` on one block.
    pub fn eta(&self, n: usize, w: usize) -> Result<Map> {
        term_map(self.field(), self.parent.basis(n, w)?, self.basis(n, w)?, &|t| {
            Ok(if self.indecomposable(t) { Element::term(t.clone(), self.field()) } else { Element::zero() })
        })
    }
}

impl SimplicialSpace for Indecomposables {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn field(&self) -> Field {
        self.parent.field()
    }

    fn truncation(&self) -> Truncation {
        self.parent.truncation()
    }

    fn basis(&self, n: usize, w: usize) -> Result<Arc<Basis>> {
        self.cache.basis(n, w, || {
            let b = self.parent.basis(n, w)?;
            Basis::new(b.labels().iter().filter(|t| self.indecomposable(t)).cloned().collect())
        })
    }

    fn face(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        self.cache.map(MapKind::Face, i, n, w, || algebra_face(self, i, n, w))
    }

    fn degeneracy(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        self.cache.map(MapKind::Degeneracy, i, n, w, || algebra_degeneracy(self, i, n, w))
    }
}

impl SimplicialAlgebra for Indecomposables {
    fn face_term(&self, i: usize, n: usize, t: &Term) -> Result<Element> {
        Ok(self.project(self.parent.face_term(i, n, t)?))
    }

    fn degeneracy_term(&self, i: usize, n: usize, t: &Term) -> Result<Element> {
        Ok(self.project(self.parent.degeneracy_term(i, n, t)?))
    }

    fn product(&self, _n: usize, factors: &[Term]) -> Result<Element> {
        if factors.is_empty() {
            return Err(Error::EmptyMultiset);
        }
        Ok(if factors.len() == 1 { Element::term(factors[0].clone(), self.field()) } else { Element::zero() })
    }

    fn monomial_degree(&self, _t: &Term) -> Option<usize> {
        Some(1)
    }

    fn power_block(&self, s: usize, n: usize, w: usize) -> Result<Option<Subspace>> {
        let d = self.basis(n, w)?.len();
        Ok(Some(if s <= 1 { Subspace::full(self.field(), d) } else { Subspace::zero(self.field(), d) }))
    }
}
