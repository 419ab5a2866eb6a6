use std::collections::HashMap;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: Field) -> Self {
        Self { entries: vec![(index, field.one())] }
    }

    /// Builds a vector from arbitrary `(index, coefficient)` pairs, summing duplicates.
    pub fn from_entries(mut raw: Vec<(usize, Scalar)>) -> Self {
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        Self { entries }
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        Self { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// Returns `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn sub(&self, other: &SparseVec, field: Field) -> SparseVec {
        self.add_scaled(&field.from_i64(-1), other)
    }

    /// Shifts every index by `offset`; used to stack vectors into a direct sum.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        Self { entries: self.entries.iter().map(|(i, c)| (i + offset, c.clone())).collect() }
    }
}

/// Incremental row echelon form; every stored row has leading coefficient one
/// and rows have pairwise distinct leading indices.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Self { field, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` until its leading index is not a pivot. Multipliers
    /// `(row, c)` with `v = remainder + sum c * row` are pushed to `track`.
    fn reduce(&self, mut v: SparseVec, mut track: Option<&mut Vec<(usize, Scalar)>>) -> SparseVec {
        while let Some((lead, c)) = v.leading() {
            let Some(&r) = self.pivots.get(&lead) else { break };
            let c = c.clone();
            v = v.add_scaled(&-&c, &self.rows[r]);
            if let Some(t) = track.as_deref_mut() {
                t.push((r, c));
            }
        }
        v
    }

    /// Inserts `v`; returns the new row id if `v` was independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let v = self.reduce(v, None);
        let (lead, c) = v.leading()?;
        let inv = c.inverse().expect("nonzero leading coefficient");
        let row = v.scaled(&inv);
        let id = self.rows.len();
        self.pivots.insert(lead, id);
        self.rows.push(row);
        Some(id)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), None).is_zero()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Rank of the span of `cols`.
pub fn rank_of(field: Field, cols: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field);
    for c in cols {
        e.insert(c.clone());
    }
    e.rank()
}

/// Kernel of the matrix whose columns are `cols`: vectors over the column
/// index space `0..cols.len()`.
pub fn kernel_of_columns(field: Field, cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
    let mut pivots: HashMap<usize, usize> = HashMap::new();
    let mut kernel = Vec::new();
    for (k, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = SparseVec::unit(k, field);
        while let Some((lead, c)) = v.leading() {
            let Some(&r) = pivots.get(&lead) else { break };
            let minus = -c;
            v = v.add_scaled(&minus, &rows[r].0);
            combo = combo.add_scaled(&minus, &rows[r].1);
        }
        match v.leading() {
            None => kernel.push(combo),
            Some((lead, c)) => {
                let inv = c.inverse().expect("nonzero leading coefficient");
                pivots.insert(lead, rows.len());
                rows.push((v.scaled(&inv), combo.scaled(&inv)));
            }
        }
    }
    kernel
}

/// A subspace of `field^ambient_dim` stored in reduced row echelon form,
/// rows sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_pos: HashMap<usize, usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Self { field, ambient_dim, rows: Vec::new(), pivots: Vec::new(), pivot_pos: HashMap::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Self::from_unit_indices(field, ambient_dim, 0..ambient_dim)
    }

    /// The coordinate subspace spanned by the given standard basis vectors.
    pub fn from_unit_indices(field: Field, ambient_dim: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut pivots: Vec<usize> = idx.into_iter().collect();
        pivots.sort_unstable();
        pivots.dedup();
        let rows = pivots.iter().map(|&i| SparseVec::unit(i, field)).collect();
        let pivot_pos = pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Self { field, ambient_dim, rows, pivots, pivot_pos }
    }

    pub fn span(field: Field, ambient_dim: usize, vecs: impl IntoIterator<Item = SparseVec>) -> Result<Self> {
        let mut e = Echelon::new(field);
        for v in vecs {
            if let Some(m) = v.max_index() {
                if m >= ambient_dim {
                    return Err(Error::DimensionMismatch(format!(
                        "vector index {m} outside ambient dimension {ambient_dim}"
                    )));
                }
            }
            e.insert(v);
        }
        let mut rows: Vec<SparseVec> = e.rows;
        rows.sort_by_key(|r| r.leading().map(|(i, _)| i));
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap().0).collect();
        let pivot_pos: HashMap<usize, usize> = pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        // Back-substitute from the largest pivot down; each row is fully
        // reduced against rows with larger pivots, which are already reduced.
        for k in (0..rows.len()).rev() {
            let mut v = rows[k].clone();
            loop {
                let hit = v
                    .entries()
                    .iter()
                    .skip(1)
                    .find(|(i, _)| pivot_pos.contains_key(i))
                    .map(|(i, c)| (*i, c.clone()));
                let Some((i, c)) = hit else { break };
                v = v.add_scaled(&-&c, &rows[pivot_pos[&i]]);
            }
            rows[k] = v;
        }
        Ok(Self { field, ambient_dim, rows, pivots, pivot_pos })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// True when every row is a standard basis vector.
    pub fn is_coordinate(&self) -> bool {
        self.rows.iter().all(|r| r.nnz() == 1)
    }

    /// Coordinates of `v` with respect to the rows, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let coords: Vec<(usize, Scalar)> = v
            .entries()
            .iter()
            .filter_map(|(i, c)| self.pivot_pos.get(i).map(|&k| (k, c.clone())))
            .collect();
        let mut residual = v.clone();
        for (k, c) in &coords {
            residual = residual.add_scaled(&-c, &self.rows[*k]);
        }
        residual.is_zero().then(|| SparseVec::from_entries(coords))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// Vector with the given coordinates.
    pub fn combine(&self, coords: &SparseVec) -> SparseVec {
        coords
            .entries()
            .iter()
            .fold(SparseVec::zero(), |acc, (k, c)| acc.add_scaled(c, &self.rows[*k]))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "intersecting subspaces of dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        let cols: Vec<SparseVec> = self.rows.iter().chain(other.rows.iter()).cloned().collect();
        let n = self.rows.len();
        let vecs = kernel_of_columns(self.field, &cols).into_iter().map(|k| {
            let a: Vec<(usize, Scalar)> = k.entries().iter().filter(|(i, _)| *i < n).cloned().collect();
            self.combine(&SparseVec::from_entries(a))
        });
        Subspace::span(self.field, self.ambient_dim, vecs)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch("sum of subspaces of different ambient spaces".into()));
        }
        Subspace::span(self.field, self.ambient_dim, self.rows.iter().chain(other.rows.iter()).cloned())
    }
}

/// A chosen complement of `U` inside `W`, giving coordinates on `W / U`.
/// Representatives are taken greedily in the echelon order of `W`.
#[derive(Clone, Debug)]
pub struct Quotient {
    field: Field,
    rows: Vec<(SparseVec, Option<usize>)>,
    pivots: HashMap<usize, usize>,
    representatives: Vec<SparseVec>,
}

impl Quotient {
    pub fn new(whole: &Subspace, sub: &Subspace) -> Result<Self> {
        if !sub.is_subspace_of(whole) {
            return Err(Error::Containment("quotient: subspace is not contained in the ambient subspace".into()));
        }
        let mut q = Self { field: whole.field(), rows: Vec::new(), pivots: HashMap::new(), representatives: Vec::new() };
        for r in sub.rows() {
            q.push(r.clone(), false);
        }
        for r in whole.rows() {
            q.push(r.clone(), true);
        }
        Ok(q)
    }

    fn reduce(&self, mut v: SparseVec, coords: &mut Vec<(usize, Scalar)>) -> SparseVec {
        while let Some((lead, c)) = v.leading() {
            let Some(&r) = self.pivots.get(&lead) else { break };
            let c = c.clone();
            v = v.add_scaled(&-&c, &self.rows[r].0);
            if let Some(k) = self.rows[r].1 {
                coords.push((k, c));
            }
        }
        v
    }

    fn push(&mut self, v: SparseVec, complement: bool) {
        let v = self.reduce(v, &mut Vec::new());
        let Some((lead, c)) = v.leading() else { return };
        let v = v.scaled(&c.inverse().unwrap());
        let tag = if complement {
            self.representatives.push(v.clone());
            Some(self.representatives.len() - 1)
        } else {
            None
        };
        self.pivots.insert(lead, self.rows.len());
        self.rows.push((v, tag));
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    /// Coordinates of the class of `v`; `None` if `v` is outside `W`.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut coords = Vec::new();
        let rest = self.reduce(v.clone(), &mut coords);
        rest.is_zero().then(|| SparseVec::from_entries(coords))
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: Field, xs: &[i64]) -> SparseVec {
        SparseVec::from_entries(xs.iter().enumerate().map(|(i, &x)| (i, field.from_i64(x))).collect())
    }

    #[test]
    fn from_entries_merges_and_drops_zeros() {
        let q = Field::Rational;
        let s = SparseVec::from_entries(vec![(2, q.from_i64(1)), (0, q.from_i64(3)), (2, q.from_i64(-1))]);
        assert_eq!(s.entries(), &[(0, q.from_i64(3))]);
    }

    #[test]
    fn rref_and_coordinates() {
        let q = Field::Rational;
        let s = Subspace::span(q, 3, vec![v(q, &[1, 1, 0]), v(q, &[0, 1, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        let target = v(q, &[1, 2, 1]);
        let c = s.coordinates(&target).unwrap();
        assert_eq!(s.combine(&c), target);
        assert!(!s.contains(&v(q, &[0, 0, 1])));
    }

    #[test]
    fn quotient_coordinates() {
        let q = Field::Rational;
        let w = Subspace::full(q, 3);
        let u = Subspace::span(q, 3, vec![v(q, &[1, 1, 0])]).unwrap();
        let quo = Quotient::new(&w, &u).unwrap();
        assert_eq!(quo.dim(), 2);
        assert!(quo.coordinates(&v(q, &[2, 2, 0])).unwrap().is_zero());
        assert!(!quo.coordinates(&v(q, &[0, 0, 1])).unwrap().is_zero());
    }

    #[test]
    fn kernel_tracks_combinations() {
        let f = Field::Prime(2);
        let cols = vec![v(f, &[1, 0]), v(f, &[0, 1]), v(f, &[1, 1])];
        let k = kernel_of_columns(f, &cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], v(f, &[1, 1, 1]));
    }
}
