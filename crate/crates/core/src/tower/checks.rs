use std::fmt;
use std::sync::Arc;

use super::derived::{derived_power_predicate, BaseFunctor, Derived};
use super::power::power_subspace;
use super::AdamsTower;
use crate::bar::h_term;
use crate::error::{Error, Result};
use crate::exactlin::{rank_of, Field, SparseVec, Subspace};
use crate::freealg::{comult_at, rewrite_element_at, Element, Term};
use crate::simplicial::{
    check_simplicial_homotopy, homology_block, homotopy_groups, induced_map, restrict_terms, HomologyBlock,
    HomotopyData, HomotopyReport, HomotopyTable, Map, SimplicialAlgebra, SimplicialSpace,
};

/// Basis-versus-oracle comparison for one block of `D̃_r X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCheck {
    pub r: usize,
    pub n: usize,
    pub w: usize,
    pub ambient_dim: usize,
    pub basis_dim: usize,
    pub oracle_dim: usize,
    pub equal: bool,
}

pub fn tower_oracle_check(tower: &AdamsTower, r: usize, n: usize, w: usize) -> Result<LevelCheck> {
    let basis = tower.level(r).subspace(n, w)?;
    let oracle = tower.kernel_oracle(r, n, w)?;
    Ok(LevelCheck {
        r,
        n,
        w,
        ambient_dim: basis.ambient_dim(),
        basis_dim: basis.dim(),
        oracle_dim: oracle.dim(),
        equal: basis.same_span(&oracle),
    })
}

/// `δ_i(D̃_r) ⊆ D̃_{r-1}` for every `i`, and `δ^r(D̃_r) ⊆ P^{r+1}X`, on one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPowerCheck {
    pub r: usize,
    pub n: usize,
    pub w: usize,
    pub source_dim: usize,
    pub image_rank: usize,
    pub power_dim: usize,
    pub failures: Vec<String>,
}

impl DeltaPowerCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn delta_power_check(tower: &AdamsTower, r: usize, n: usize, w: usize) -> Result<DeltaPowerCheck> {
    let x = tower.base();
    let mut failures = Vec::new();
    for i in 0..r {
        match tower.delta(r, i, n, w) {
            Ok(_) => {}
            Err(Error::Containment(m)) => failures.push(format!("δ_{i}: {m}")),
            Err(e) => return Err(e),
        }
    }
    let composite = tower.tower_composite(r, 0, n, w)?;
    let into_x = tower.level(0).inclusion(n, w)?.compose(&composite)?;
    let power = power_subspace(x.as_ref(), r + 1, n, w)?;
    for (k, col) in into_x.columns().iter().enumerate() {
        if !power.contains(col) {
            failures.push(format!(
                "δ^{r} sends {} to {}, outside P^{}",
                into_x.domain().label(k),
                into_x.codomain().render(col),
                r + 1
            ));
        }
    }
    Ok(DeltaPowerCheck {
        r,
        n,
        w,
        source_dim: composite.domain().len(),
        image_rank: into_x.rank(),
        power_dim: power.dim(),
        failures,
    })
}

/// Products of basis elements of `D̃_r X` in weights `w1 + w2 ≤ w_max` stay in `D̃_r X`.
pub fn product_closure_check(tower: &AdamsTower, r: usize, n: usize, w_max: usize) -> Result<Vec<String>> {
    let level = tower.level(r);
    let ambient = tower.ambient(r);
    let mut failures = Vec::new();
    for w1 in 1..w_max {
        for w2 in w1..=w_max - w1 {
            let a = level.basis(n, w1)?;
            let b = level.basis(n, w2)?;
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let target = ambient.basis(n, w1 + w2)?;
            for s in a.labels() {
                for t in b.labels() {
                    let p = ambient.product(n, &[s.clone(), t.clone()])?;
                    let v = target.vector(p.into_vec())?;
                    if let Err(e) = level.coordinates(n, w1 + w2, &v) {
                        failures.push(format!("{s} · {t}: {e}"));
                    }
                }
            }
        }
    }
    Ok(failures)
}

/// `π_q(D̃_t P^s A)` per weight, with every `q ≤ s - t` carrying a nonzero
/// group flagged.
#[derive(Clone, Debug)]
pub struct ConnectivityReport {
    pub algebra: String,
    pub t: usize,
    pub s: usize,
    pub q_max: usize,
    pub table: HomotopyTable,
    /// `(q, w, dim)` with `q ≤ s - t` and `dim > 0`.
    pub falsifications: Vec<(usize, usize, usize)>,
}

impl ConnectivityReport {
    pub fn passed(&self) -> bool {
        self.falsifications.is_empty()
    }
}

pub fn connectivity_report(
    a: Arc<dyn SimplicialAlgebra>,
    t: usize,
    s: usize,
    q_max: usize,
    cap: u128,
) -> Result<ConnectivityReport> {
    if t == 0 || s < 2 {
        return Err(Error::InvalidArgument(format!("derived powers need t ≥ 1 and s ≥ 2, got t={t} s={s}")));
    }
    let derived = Derived::new(a.clone(), BaseFunctor::Power(s), t, cap, true)?;
    let space = derived.space();
    let table = homotopy_groups(&space, q_max)?;
    let falsifications = table
        .dims
        .iter()
        .filter(|(&(q, _), &d)| q + t <= s && d > 0)
        .map(|(&(q, w), &d)| (q, w, d))
        .collect();
    Ok(ConnectivityReport { algebra: a.name(), t, s, q_max, table, falsifications })
}

/// The recursive `D̃_t P^s A` against its unrolled monomial description.
pub fn derived_power_oracle_check(derived: &Derived, t: usize, s: usize, n: usize, w: usize) -> Result<bool> {
    let block = derived.block(n, w)?;
    let basis = derived.ambient().basis(n, w)?;
    let idx = (0..basis.len()).filter(|&k| derived_power_predicate(t, s, n, basis.label(k)));
    let oracle = Subspace::from_unit_indices(derived.ambient().field(), basis.len(), idx.collect::<Vec<_>>());
    Ok(block.same_span(&oracle))
}

/// `D̃_s F X` computed recursively against level `s + k` of the tower, where
/// `F` is the identity (`k = 0`) or `D̃_k`.
pub fn recursive_level_check(tower: &AdamsTower, base: BaseFunctor, s: usize, n: usize, w: usize, cap: u128) -> Result<bool> {
    let r = s + base.bar_depth();
    let derived = Derived::new(tower.base().clone(), base, s, cap, true)?;
    let labels = derived.ambient().basis(n, w)?;
    let level = tower.level(r).subspace(n, w)?;
    if labels.labels() != tower.ambient(r).basis(n, w)?.labels() {
        return Err(Error::LabelMismatch(format!("two realizations of b^{r} disagree in degree {n} weight {w}")));
    }
    Ok(derived.block(n, w)?.same_span(&level))
}

/// `Σ_j inner[k]_j · outer[j]`: the composite of two maps given by columns.
fn compose_columns(outer: &[SparseVec], inner: &[SparseVec]) -> Vec<SparseVec> {
    inner
        .iter()
        .map(|c| {
            c.entries().iter().fold(SparseVec::zero(), |acc, (j, x)| acc.add_scaled(x, &outer[*j]))
        })
        .collect()
}

fn column_rank(field: Field, cols: &[SparseVec]) -> usize {
    rank_of(field, cols)
}

/// One weight of `π_q(D̃_{2t+q-1}X) → π_q(D̃_t X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceBlock {
    pub w: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Rank of the map induced by the chain-level composite of tower maps.
    pub chain_rank: usize,
    /// Rank of the composite of the maps induced by single tower maps.
    pub composed_rank: usize,
    /// Ranks of `π_q(D̃_m X) → π_q(D̃_t X)` for `m = t, t+1, …, 2t+q-1`.
    pub image_ranks: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub algebra: String,
    pub t: usize,
    pub q: usize,
    pub from: usize,
    pub blocks: Vec<ConvergenceBlock>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.blocks.iter().all(|b| b.chain_rank == 0 && b.composed_rank == 0)
    }

    /// True when every source group is zero, so the pass says nothing.
    pub fn vacuous(&self) -> bool {
        self.blocks.iter().all(|b| b.source_dim == 0)
    }

    /// Image ranks never increase along the tower.
    pub fn images_decrease(&self) -> bool {
        self.blocks.iter().all(|b| b.image_ranks.windows(2).all(|p| p[1] <= p[0]))
    }
}

pub fn convergence_check(tower: &AdamsTower, t: usize, q: usize) -> Result<ConvergenceReport> {
    let from = 2 * t + q - 1;
    if t == 0 || from > tower.r_max() {
        return Err(Error::Truncation(format!("convergence at t={t} q={q} needs tower levels up to {from}")));
    }
    let field = tower.base().field();
    let mut blocks = Vec::new();
    for w in tower.ambient(0).weights() {
        let homology: Vec<HomologyBlock> =
            (t..=from).map(|m| homology_block(tower.level(m).as_ref(), q, w)).collect::<Result<_>>()?;
        let target_dim = homology[0].dim();
        let mut composed: Vec<SparseVec> = (0..target_dim).map(|k| SparseVec::unit(k, field)).collect();
        let mut image_ranks = vec![target_dim];
        for m in t + 1..=from {
            let step = induced_map(&tower.tower_map(m, q, w)?, &homology[m - t], &homology[m - t - 1])?;
            composed = compose_columns(&composed, &step);
            image_ranks.push(column_rank(field, &composed));
        }
        let chain = induced_map(&tower.tower_composite(from, t, q, w)?, &homology[from - t], &homology[0])?;
        blocks.push(ConvergenceBlock {
            w,
            source_dim: homology[from - t].dim(),
            target_dim,
            chain_rank: column_rank(field, &chain),
            composed_rank: *image_ranks.last().unwrap(),
            image_ranks,
        });
    }
    Ok(ConvergenceReport { algebra: tower.base().name(), t, q, from, blocks })
}

/// `b^m(h)` for the appendix homotopy `h` of `Y`, on a term of `(b^{m+2}Y)_q`:
/// the comultiplication at distance `j` followed by `b^{m-1}(h)` on the inner part.
pub fn lifted_h_term(y: &dyn SimplicialAlgebra, m: usize, j: usize, q: usize, t: &Term) -> Result<Element> {
    if m == 0 {
        return h_term(y, j, q, t, false);
    }
    let field = y.field();
    let e = comult_at(t, j, field)?;
    rewrite_element_at(&e, q + 2, field, &|u: &Term| lifted_h_term(y, m - 1, j, q, u))
}

/// Agreement of the maps `π_q(D̃_n X) → π_q(D̃_{n-1} X)` induced by all `δ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedAgreement {
    pub q: usize,
    pub w: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct TwistingReport {
    pub algebra: String,
    pub n: usize,
    pub q_max: usize,
    /// `b^{s-1}(h)` restricted to `D̃_n X → D̃_{n-1} X`, a homotopy from `δ_{s-1}` to `δ_s`.
    pub homotopies: Vec<(usize, HomotopyReport)>,
    pub induced: Vec<InducedAgreement>,
}

impl TwistingReport {
    pub fn passed(&self) -> bool {
        self.homotopies.iter().all(|(_, h)| h.passed()) && self.induced.iter().all(|b| b.agree)
    }
}

pub fn twisting_check(tower: &AdamsTower, n: usize, q_max: usize) -> Result<TwistingReport> {
    if n == 0 || n > tower.r_max() {
        return Err(Error::InvalidArgument(format!("twisting needs 1 ≤ n ≤ {}, got {n}", tower.r_max())));
    }
    let k = tower.level(n).as_ref();
    let l = tower.level(n - 1).as_ref();
    let q_top = q_max.min(k.truncation().max_degree.saturating_sub(1));
    for w in k.weights() {
        for q in 0..=(q_max + 1).min(k.truncation().max_degree) {
            k.basis(q, w)?;
            l.basis(q, w)?;
        }
    }
    let mut homotopies = Vec::new();
    for s in 1..n {
        let y = tower.ambient(n - s - 1).clone();
        let h = |j: usize, q: usize, w: usize| -> Result<Map> {
            restrict_terms(k, l, q, q + 1, w, &|t| lifted_h_term(y.as_ref(), s - 1, j, q, t))
        };
        let f = |q: usize, w: usize| tower.delta(n, s - 1, q, w);
        let g = |q: usize, w: usize| tower.delta(n, s, q, w);
        let report = check_simplicial_homotopy(&HomotopyData { source: k, target: l, h: &h, f: &f, g: &g, q_max });
        homotopies.push((s, report));
    }
    let field = tower.base().field();
    let mut induced = Vec::new();
    for q in 0..=q_top {
        for w in k.weights() {
            let src = homology_block(k, q, w)?;
            let tgt = homology_block(l, q, w)?;
            let maps: Vec<Vec<SparseVec>> =
                (0..n).map(|i| induced_map(&tower.delta(n, i, q, w)?, &src, &tgt)).collect::<Result<_>>()?;
            induced.push(InducedAgreement {
                q,
                w,
                source_dim: src.dim(),
                target_dim: tgt.dim(),
                rank: column_rank(field, &maps[0]),
                agree: maps.iter().all(|m| m == &maps[0]),
            });
        }
    }
    Ok(TwistingReport { algebra: tower.base().name(), n, q_max, homotopies, induced })
}

impl fmt::Display for LevelCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={} n={} w={} ambient={} basis={} oracle={} {}",
            self.r,
            self.n,
            self.w,
            self.ambient_dim,
            self.basis_dim,
            self.oracle_dim,
            if self.equal { "equal" } else { "DIFFER" }
        )
    }
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "π_{}(D{}) → π_{}(D{}) for {}", self.q, self.from, self.q, self.t, self.algebra)?;
        for b in &self.blocks {
            writeln!(
                f,
                "  w={} source={} target={} chain_rank={} composed_rank={} images={:?}",
                b.w, b.source_dim, b.target_dim, b.chain_rank, b.composed_rank, b.image_ranks
            )?;
        }
        write!(f, "  {}{}", if self.passed() { "zero" } else { "NONZERO" }, if self.vacuous() { " (vacuous)" } else { "" })
    }
}
