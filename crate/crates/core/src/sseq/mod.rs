//! Symmetric coinvariants, the power filtration of `bA` and its `E⁰` page.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::bar::{Bar, Indecomposables};
use crate::error::{Error, Result};
use crate::exactlin::{Field, LinearMap, SparseVec};
use crate::freealg::{combine_children, Element, Term};
use crate::simplicial::{
    check_degeneracy, check_face, homotopy_groups, moore_chains, Basis, BlockCache, CoordinateSubquotient, HomotopyTable,
    Map, MapKind, SimplicialAlgebra, SimplicialSpace, SubObject, Truncation,
};
use crate::tower::power_object;

/// `(V^{⊗p})_{Σ_p}` with the diagonal structure maps. The basis of a block is
/// the multisets of `p` basis elements of `V_n` whose weights add up to `w`,
/// written as a node over those elements.
pub struct SymPower {
    source: Arc<dyn SimplicialSpace>,
    p: usize,
    cache: BlockCache,
}

impl SymPower {
    pub fn new(source: Arc<dyn SimplicialSpace>, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("the zeroth symmetric power is not realized".into()));
        }
        if !source.graded() {
            return Err(Error::Ungraded(format!("symmetric powers of {} need weights", source.name())));
        }
        Ok(Self { source, p, cache: BlockCache::default() })
    }

    /// Weight and index of a source basis element at level `n`.
    fn locate(&self, n: usize, t: &Term) -> Result<(usize, usize)> {
        for w in self.source.weights() {
            if let Some(k) = self.source.basis(n, w)?.index_of(t) {
                return Ok((w, k));
            }
        }
        Err(Error::LabelMismatch(format!("{t} is not a basis element of {} in degree {n}", self.source.name())))
    }

    fn structure_map(&self, kind: MapKind, i: usize, n: usize, m: usize, w: usize) -> Result<Map> {
        let dom = self.basis(n, w)?;
        let cod = self.basis(m, w)?;
        let field = self.field();
        let columns = dom
            .labels()
            .iter()
            .map(|t| {
                let images = t
                    .children()
                    .iter()
                    .map(|v| {
                        let (wv, k) = self.locate(n, v)?;
                        let f = match kind {
                            MapKind::Face => self.source.face(i, n, wv)?,
                            MapKind::Degeneracy => self.source.degeneracy(i, n, wv)?,
                        };
                        let col = f.column(k);
                        Ok(Element::from_terms(col.entries().iter().map(|(j, c)| (f.codomain().label(*j).clone(), c.clone()))))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if images.iter().any(|e| e.is_zero()) {
                    return Ok(SparseVec::zero());
                }
                cod.vector(combine_children(&images, field).into_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        LinearMap::new(field, dom, cod, columns)
    }
}

impl SimplicialSpace for SymPower {
    fn name(&self) -> String {
        format!("Sym^{}({})", self.p, self.source.name())
    }

    fn field(&self) -> Field {
        self.source.field()
    }

    fn truncation(&self) -> Truncation {
        self.source.truncation()
    }

    fn basis(&self, n: usize, w: usize) -> Result<Arc<Basis>> {
        self.cache.basis(n, w, || {
            // (weight, term) of every source element light enough to appear
            let mut pool: Vec<(usize, Term)> = Vec::new();
            for wv in self.source.weights().into_iter().filter(|&wv| wv <= w) {
                pool.extend(self.source.basis(n, wv)?.labels().iter().map(|t| (wv, t.clone())));
            }
            let mut out = Vec::new();
            let mut pick = Vec::with_capacity(self.p);
            multisets(&pool, self.p, w, 0, &mut pick, &mut out)?;
            out.sort();
            Basis::new(out)
        })
    }

    fn face(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        check_face(self, i, n)?;
        self.cache.map(MapKind::Face, i, n, w, || self.structure_map(MapKind::Face, i, n, n - 1, w))
    }

    fn degeneracy(&self, i: usize, n: usize, w: usize) -> Result<Arc<Map>> {
        check_degeneracy(self, i, n)?;
        self.cache.map(MapKind::Degeneracy, i, n, w, || self.structure_map(MapKind::Degeneracy, i, n, n + 1, w))
    }
}

fn multisets(
    pool: &[(usize, Term)],
    left: usize,
    w: usize,
    start: usize,
    pick: &mut Vec<Term>,
    out: &mut Vec<Term>,
) -> Result<()> {
    if left == 0 {
        if w == 0 {
            out.push(Term::node(pick.clone())?);
        }
        return Ok(());
    }
    for k in start..pool.len() {
        let (wk, t) = &pool[k];
        // the remaining picks weigh at least one each
        if *wk + (left - 1) > w {
            continue;
        }
        pick.push(t.clone());
        multisets(pool, left - 1, w - wk, k, pick, out)?;
        pick.pop();
    }
    Ok(())
}

/// `π_q((V^{⊗p})_{Σ_p})` with every nonzero group in degree `q ≤ p - 1` flagged.
#[derive(Clone, Debug)]
pub struct DoldPuppeReport {
    pub space: String,
    pub p: usize,
    pub table: HomotopyTable,
    pub falsifications: Vec<(usize, usize, usize)>,
}

impl DoldPuppeReport {
    pub fn passed(&self) -> bool {
        self.falsifications.is_empty()
    }
}

pub fn dold_puppe_check(v: Arc<dyn SimplicialSpace>, p: usize, q_max: usize) -> Result<DoldPuppeReport> {
    let sym = SymPower::new(v, p)?;
    let table = homotopy_groups(&sym, q_max)?;
    let falsifications = table.dims.iter().filter(|(&(q, _), &d)| q < p && d > 0).map(|(&(q, w), &d)| (q, w, d)).collect();
    Ok(DoldPuppeReport { space: sym.name(), p, table, falsifications })
}

/// `P^p(bA) / P^{p+1}(bA)`.
pub fn power_quotient(ba: Arc<dyn SimplicialAlgebra>, p: usize) -> CoordinateSubquotient {
    let big = Arc::new(power_object(ba.clone(), p));
    let small = Arc::new(power_object(ba.clone(), p + 1));
    CoordinateSubquotient::new(&format!("P^{p}/P^{}({})", p + 1, ba.name()), big, small)
}

/// One `(q, w)` entry comparing `P^p(bA)/P^{p+1}(bA)` with `(QbA)^{⊗p}_{Σ_p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRow {
    pub q: usize,
    pub w: usize,
    pub quotient_chains: usize,
    pub coinvariant_chains: usize,
    pub quotient_pi: usize,
    pub coinvariant_pi: usize,
}

impl QuotientRow {
    pub fn matches(&self) -> bool {
        self.quotient_chains == self.coinvariant_chains && self.quotient_pi == self.coinvariant_pi
    }
}

#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub algebra: String,
    pub p: usize,
    pub rows: Vec<QuotientRow>,
}

impl QuotientReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(QuotientRow::matches)
    }
}

/// Moore chain and homotopy dimensions of both sides of
/// `P^p(bA)/P^{p+1}(bA) ≅ (QbA)^{⊗p}_{Σ_p}`, computed independently.
pub fn power_quotient_check(a: Arc<dyn SimplicialAlgebra>, p: usize, q_max: usize, cap: u128) -> Result<QuotientReport> {
    let ba: Arc<dyn SimplicialAlgebra> = Arc::new(Bar::with_cap(a.clone(), cap)?);
    let quotient = power_quotient(ba.clone(), p);
    let qba: Arc<dyn SimplicialSpace> = Arc::new(Indecomposables::new(ba.clone()));
    let sym = SymPower::new(qba, p)?;
    let lhs = homotopy_groups(&quotient, q_max)?;
    let rhs = homotopy_groups(&sym, q_max)?;
    let mut rows = Vec::new();
    for q in 0..=q_max {
        for w in ba.weights() {
            rows.push(QuotientRow {
                q,
                w,
                quotient_chains: moore_chains(&quotient, q, w)?.dim(),
                coinvariant_chains: moore_chains(&sym, q, w)?.dim(),
                quotient_pi: lhs.get(q, w),
                coinvariant_pi: rhs.get(q, w),
            });
        }
    }
    Ok(QuotientReport { algebra: a.name(), p, rows })
}

/// `E⁰_{p,q} = N_q(F_p / F_{p+1})` for the filtration `F_p = P^{max(p,s)}(bA)`
/// of `P^s(bA)`, per weight, next to `dim π_q(P^s(bA))`.
#[derive(Clone, Debug)]
pub struct E0Page {
    pub algebra: String,
    pub s: usize,
    pub q_max: usize,
    /// `(p, q, w) ↦ dim E⁰_{p,q}` for `1 ≤ p ≤ w`.
    pub entries: BTreeMap<(usize, usize, usize), usize>,
    pub pi: HomotopyTable,
    /// Weights where `P^p(bA)` survives past `p = w`.
    pub unbounded: Vec<(usize, usize, usize)>,
}

impl E0Page {
    pub fn get(&self, p: usize, q: usize, w: usize) -> usize {
        self.entries.get(&(p, q, w)).copied().unwrap_or(0)
    }

    pub fn column_sum(&self, q: usize, w: usize) -> usize {
        self.entries.iter().filter(|(&(_, q2, w2), _)| q2 == q && w2 == w).map(|(_, &d)| d).sum()
    }

    pub fn low_rows_vanish(&self) -> bool {
        self.entries.iter().all(|(&(p, _, _), &d)| p >= self.s || d == 0)
    }

    /// `dim π_q(P^s(bA))_w ≤ Σ_p dim E⁰_{p,q}` in every computed block.
    pub fn bound_holds(&self) -> bool {
        self.pi.dims.iter().all(|(&(q, w), &d)| d <= self.column_sum(q, w))
    }

    pub fn passed(&self) -> bool {
        self.low_rows_vanish() && self.bound_holds() && self.unbounded.is_empty()
    }
}

pub fn e0_page(a: Arc<dyn SimplicialAlgebra>, s: usize, q_max: usize, cap: u128) -> Result<E0Page> {
    if s == 0 {
        return Err(Error::InvalidArgument("the filtration starts at s ≥ 1".into()));
    }
    let ba: Arc<dyn SimplicialAlgebra> = Arc::new(Bar::with_cap(a.clone(), cap)?);
    let w_max = ba.truncation().max_weight;
    let filtration: Vec<Arc<SubObject>> =
        (0..=w_max + 2).map(|p| Arc::new(power_object(ba.clone(), p.max(s)))).collect();
    let mut entries = BTreeMap::new();
    let mut unbounded = Vec::new();
    for p in 1..=w_max {
        let gr = CoordinateSubquotient::new(&format!("gr_{p}"), filtration[p].clone(), filtration[p + 1].clone());
        for q in 0..=q_max {
            for w in p..=w_max {
                entries.insert((p, q, w), moore_chains(&gr, q, w)?.dim());
            }
        }
    }
    for q in 0..=q_max {
        for w in 1..=w_max {
            let beyond = filtration[w + 1].subspace(q, w)?.dim();
            if beyond > 0 {
                unbounded.push((w + 1, q, w));
            }
        }
    }
    let pi = homotopy_groups(filtration[s].as_ref(), q_max)?;
    Ok(E0Page { algebra: a.name(), s, q_max, entries, pi, unbounded })
}

impl fmt::Display for E0Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weights: Vec<usize> = self.pi.weights();
        writeln!(f, "E0 of P^{}(b{})", self.s, self.algebra)?;
        for &w in &weights {
            writeln!(f, "  w={w}")?;
            for p in 1..=w {
                let row: Vec<String> = (0..=self.q_max).map(|q| format!("{:>5}", self.get(p, q, w))).collect();
                writeln!(f, "    p={p} {}", row.join(""))?;
            }
            let sums: Vec<String> = (0..=self.q_max).map(|q| format!("{:>5}", self.column_sum(q, w))).collect();
            let pis: Vec<String> = (0..=self.q_max).map(|q| format!("{:>5}", self.pi.get(q, w))).collect();
            writeln!(f, "    sum {}", sums.join(""))?;
            writeln!(f, "    π   {}", pis.join(""))?;
        }
        Ok(())
    }
}
