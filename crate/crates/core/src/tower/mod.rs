//! The modified Adams tower `D̃_r X ⊆ b^r X`, its maps, powers, and the
//! derived powers `D̃_t P^s`.

mod checks;
mod derived;
mod power;

use std::sync::Arc;

pub use checks::*;
pub use derived::*;
pub use power::*;

use crate::bar::{collapse_block, Bar, Indecomposables};
use crate::error::{Error, Result};
use crate::exactlin::{intersect, LinearMap, Subspace};
use crate::freealg::{free_product, rewrite_at, Element, Term};
use crate::simplicial::{restrict_terms, term_map, Map, SimplicialAlgebra, SimplicialSpace, SubObject};

/// Membership in `D̃_r X` for a basis term of `(b^r X)_n`: for each
/// `1 ≤ i ≤ r` some multiset at distance `(r-i)(n+1)` has two or more members.
pub fn tower_predicate(r: usize, n: usize, t: &Term) -> bool {
    (1..=r).all(|i| t.some_node_at_least((r - i) * (n + 1), 2))
}

/// The levels `D̃_0 X = X, D̃_1 X, …, D̃_{r_max} X` over shared iterated bars.
pub struct AdamsTower {
    x: Arc<dyn SimplicialAlgebra>,
    bars: Vec<Arc<dyn SimplicialAlgebra>>,
    levels: Vec<Arc<SubObject>>,
    cap: u128,
}

impl AdamsTower {
    pub fn new(x: Arc<dyn SimplicialAlgebra>, r_max: usize, cap: u128) -> Result<Self> {
        if !x.graded() {
            return Err(Error::Ungraded(format!("the tower of {} needs a weight grading", x.name())));
        }
        let mut bars: Vec<Arc<dyn SimplicialAlgebra>> = vec![x.clone()];
        for _ in 0..r_max {
            let b: Arc<dyn SimplicialAlgebra> = Arc::new(Bar::with_cap(bars.last().unwrap().clone(), cap)?);
            bars.push(b);
        }
        let levels = bars
            .iter()
            .enumerate()
            .map(|(r, b)| {
                let parent: Arc<dyn SimplicialSpace> = b.clone();
                Arc::new(SubObject::coordinate(&format!("D{r}({})", x.name()), parent, move |n, t| {
                    // fewer than r+1 leaves leave no room for r decomposable layers
                    t.leaf_count() > r && tower_predicate(r, n, t)
                }))
            })
            .collect();
        Ok(Self { x, bars, levels, cap })
    }

    pub fn base(&self) -> &Arc<dyn SimplicialAlgebra> {
        &self.x
    }

    pub fn r_max(&self) -> usize {
        self.levels.len() - 1
    }

    /// `b^r X`.
    pub fn ambient(&self, r: usize) -> &Arc<dyn SimplicialAlgebra> {
        &self.bars[r]
    }

    /// `D̃_r X`.
    pub fn level(&self, r: usize) -> &Arc<SubObject> {
        &self.levels[r]
    }

    /// The sub-basis of `(b^r X)_n` described by `tower_predicate`.
    pub fn tower_basis(&self, r: usize, n: usize, w: usize) -> Result<Vec<Term>> {
        Ok(self.levels[r].basis(n, w)?.labels().to_vec())
    }

    /// `∩_{i=1}^{r} ker(b^{r-i} η b^i)` inside `(b^r X)_n`, each map built
    /// functorially into `b^{r-i} KQ b^i X` and its kernel found by elimination.
    pub fn kernel_oracle(&self, r: usize, n: usize, w: usize) -> Result<Subspace> {
        let field = self.x.field();
        let ambient = self.bars[r].basis(n, w)?;
        let mut kernels = Vec::new();
        for i in 1..=r {
            let kq: Arc<dyn SimplicialAlgebra> = Arc::new(Indecomposables::new(self.bars[i].clone()));
            let target = Bar::iterate(kq.clone(), r - i, self.cap)?;
            let d = (r - i) * (n + 1);
            let m = term_map(field, ambient.clone(), target.basis(n, w)?, &|t| {
                rewrite_at(t, d, field, &|u: &Term| {
                    Ok(if self.bars[i].monomial_degree(u) == Some(1) {
                        Element::term(u.clone(), field)
                    } else {
                        Element::zero()
                    })
                })
            })?;
            kernels.push(m.kernel());
        }
        intersect(field, ambient.len(), &kernels)
    }

    /// `b^i ε b^{r-i-1}` on `(b^r X)_n → (b^{r-1} X)_n`: collapses block `i`
    /// counted from the outside.
    pub fn delta_term(&self, r: usize, i: usize, n: usize, t: &Term) -> Result<Element> {
        if i >= r {
            return Err(Error::InvalidArgument(format!("δ_{i} needs i < r = {r}")));
        }
        let field = self.x.field();
        if i == r - 1 {
            let x = self.x.clone();
            collapse_block(t, i * (n + 1), n, field, &move |ch: &[Term]| x.product(n, ch))
        } else {
            collapse_block(t, i * (n + 1), n, field, &|ch: &[Term]| free_product(ch, field))
        }
    }

    pub fn delta_ambient(&self, r: usize, i: usize, n: usize, w: usize) -> Result<Map> {
        let field = self.x.field();
        term_map(field, self.bars[r].basis(n, w)?, self.bars[r - 1].basis(n, w)?, &|t| self.delta_term(r, i, n, t))
    }

    /// `δ_i: D̃_r X → D̃_{r-1} X` on one block; fails if the image escapes.
    pub fn delta(&self, r: usize, i: usize, n: usize, w: usize) -> Result<Map> {
        restrict_terms(&self.levels[r], &self.levels[r - 1], n, n, w, &|t| self.delta_term(r, i, n, t))
    }

    /// The tower map `D̃_r X → D̃_{r-1} X`, collapsing the innermost block.
    pub fn tower_map(&self, r: usize, n: usize, w: usize) -> Result<Map> {
        self.delta(r, r - 1, n, w)
    }

    /// Composite of tower maps `D̃_from X → D̃_to X`.
    pub fn tower_composite(&self, from: usize, to: usize, n: usize, w: usize) -> Result<Map> {
        let mut acc = LinearMap::identity(self.x.field(), self.levels[from].basis(n, w)?);
        for r in (to + 1..=from).rev() {
            acc = self.tower_map(r, n, w)?.compose(&acc)?;
        }
        Ok(acc)
    }
}
