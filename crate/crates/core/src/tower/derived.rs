use std::sync::Arc;

use super::power::power_subspace;
use super::tower_predicate;
use crate::bar::{Bar, Indecomposables};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_of_columns, Subspace};
use crate::freealg::{rewrite_at, Element, Term};
use crate::simplicial::{term_map, BlockCache, SimplicialAlgebra, SimplicialSpace, SubObject};

/// The functors `F` whose derived tower `D̃_t F` is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseFunctor {
    Identity,
    /// `P^s`.
    Power(usize),
    /// The bar construction `b`.
    Bar,
    /// `D̃_t`.
    Tower(usize),
}

impl BaseFunctor {
    /// Number of bar blocks `F` adds: `F(A) ⊆ b^k A`.
    pub fn bar_depth(&self) -> usize {
        match *self {
            BaseFunctor::Identity | BaseFunctor::Power(_) => 0,
            BaseFunctor::Bar => 1,
            BaseFunctor::Tower(t) => t,
        }
    }

    fn label(&self) -> String {
        match *self {
            BaseFunctor::Identity => "id".into(),
            BaseFunctor::Power(s) => format!("P^{s}"),
            BaseFunctor::Bar => "b".into(),
            BaseFunctor::Tower(t) => format!("D{t}"),
        }
    }
}

enum Stage {
    Base,
    /// `ker(D̃_{t-1}F(bA) → D̃_{t-1}F(KQbA))`.
    Step { upper: Arc<Derived>, lower: Arc<Derived> },
}

/// `D̃_t F(A)`, defined recursively by `D̃_0 F = F` and
/// `D̃_t F(A) = ker(D̃_{t-1}F(bA) → D̃_{t-1}F(KQbA))`, realized blockwise
/// inside `b^{t+k} A` where `F(A) ⊆ b^k A`.
pub struct Derived {
    name: String,
    base: BaseFunctor,
    t: usize,
    alg: Arc<dyn SimplicialAlgebra>,
    ambient: Arc<dyn SimplicialAlgebra>,
    stage: Stage,
    check_surjective: bool,
    cache: BlockCache,
}

impl Derived {
    pub fn new(
        alg: Arc<dyn SimplicialAlgebra>,
        base: BaseFunctor,
        t: usize,
        cap: u128,
        check_surjective: bool,
    ) -> Result<Arc<Self>> {
        let name = format!("D{t}{}({})", base.label(), alg.name());
        if t == 0 {
            let ambient = Bar::iterate(alg.clone(), base.bar_depth(), cap)?;
            return Ok(Arc::new(Self {
                name,
                base,
                t,
                alg,
                ambient,
                stage: Stage::Base,
                check_surjective,
                cache: BlockCache::default(),
            }));
        }
        let balg: Arc<dyn SimplicialAlgebra> = Arc::new(Bar::with_cap(alg.clone(), cap)?);
        let kq: Arc<dyn SimplicialAlgebra> = Arc::new(Indecomposables::new(balg.clone()));
        let upper = Derived::new(balg, base, t - 1, cap, check_surjective)?;
        let lower = Derived::new(kq, base, t - 1, cap, check_surjective)?;
        let ambient = upper.ambient.clone();
        Ok(Arc::new(Self {
            name,
            base,
            t,
            alg,
            ambient,
            stage: Stage::Step { upper, lower },
            check_surjective,
            cache: BlockCache::default(),
        }))
    }

    pub fn ambient(&self) -> &Arc<dyn SimplicialAlgebra> {
        &self.ambient
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The block `(n, w)` in coordinates of `(b^{t+k} A)_n`.
    pub fn block(&self, n: usize, w: usize) -> Result<Arc<Subspace>> {
        self.cache.subspace(n, w, || self.compute(n, w))
    }

    fn compute(&self, n: usize, w: usize) -> Result<Subspace> {
        let field = self.alg.field();
        match &self.stage {
            Stage::Base => match self.base {
                BaseFunctor::Identity | BaseFunctor::Bar => {
                    Ok(Subspace::full(field, self.ambient.basis(n, w)?.len()))
                }
                BaseFunctor::Power(s) => power_subspace(self.alg.as_ref(), s, n, w),
                BaseFunctor::Tower(r) => {
                    let b = self.ambient.basis(n, w)?;
                    let idx: Vec<usize> = (0..b.len()).filter(|&k| tower_predicate(r, n, b.label(k))).collect();
                    Ok(Subspace::from_unit_indices(field, b.len(), idx))
                }
            },
            Stage::Step { upper, lower } => {
                let u = upper.block(n, w)?;
                let dom = self.ambient.basis(n, w)?;
                let cod = lower.ambient.basis(n, w)?;
                let d = (self.t - 1 + self.base.bar_depth()) * (n + 1);
                // D̃_{t-1}F(η) is b^{t-1+k}(η): η on the terms of bA at distance d.
                let balg = upper.alg.clone();
                let eta = term_map(field, dom, cod, &|x: &Term| {
                    rewrite_at(x, d, field, &|y: &Term| {
                        Ok(if balg.monomial_degree(y) == Some(1) { Element::term(y.clone(), field) } else { Element::zero() })
                    })
                })?;
                let images: Vec<_> = u.rows().iter().map(|r| eta.apply(r)).collect();
                if self.check_surjective {
                    let image = Subspace::span(field, eta.codomain().len(), images.clone())?;
                    let target = lower.block(n, w)?;
                    if !image.same_span(&target) {
                        return Err(Error::NotSurjective(format!(
                            "{} → {} in degree {n} weight {w}: image has dimension {} and the target {}",
                            upper.name,
                            lower.name,
                            image.dim(),
                            target.dim()
                        )));
                    }
                }
                let combos = kernel_of_columns(field, &images);
                Subspace::span(field, u.ambient_dim(), combos.iter().map(|c| u.combine(c)))
            }
        }
    }

    /// `D̃_t F(A)` as a simplicial sub-object of `b^{t+k} A`.
    pub fn space(self: &Arc<Self>) -> SubObject {
        let me = self.clone();
        let parent: Arc<dyn SimplicialSpace> = self.ambient.clone();
        SubObject::new(&self.name, parent, move |n, w| Ok((*me.block(n, w)?).clone()))
    }
}

/// Unrolled description of `D̃_t P^s(A)` inside `(b^t A)_n`: top multiset of
/// size at least `s` and, for `1 ≤ i ≤ t-1`, some multiset of size at least
/// two at distance `i(n+1)`.
pub fn derived_power_predicate(t: usize, s: usize, n: usize, x: &Term) -> bool {
    x.top_size() >= s && (1..t).all(|i| x.some_node_at_least(i * (n + 1), 2))
}
