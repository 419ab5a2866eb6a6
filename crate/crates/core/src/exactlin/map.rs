use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;
use std::sync::Arc;

use super::scalar::{Field, Scalar};
use super::sparse::{kernel_of_columns, rank_of, SparseVec, Subspace};
use crate::error::{Error, Result};

pub trait Label: Clone + Eq + Hash + Display + Send + Sync {}
impl<T: Clone + Eq + Hash + Display + Send + Sync> Label for T {}

/// An ordered list of distinct labels.
#[derive(Clone, Debug)]
pub struct LabeledBasis<L: Label> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
}

impl<L: Label> LabeledBasis<L> {
    pub fn new(labels: Vec<L>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (k, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), k).is_some() {
                return Err(Error::LabelMismatch(format!("duplicate basis label {l}")));
            }
        }
        Ok(Self { labels, index })
    }

    pub fn empty() -> Self {
        Self { labels: Vec::new(), index: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> &L {
        &self.labels[k]
    }

    pub fn index_of(&self, l: &L) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn same_as(&self, other: &LabeledBasis<L>) -> bool {
        self.labels == other.labels
    }

    /// Converts labeled coefficients into a sparse vector over this basis.
    pub fn vector(&self, terms: impl IntoIterator<Item = (L, Scalar)>) -> Result<SparseVec> {
        let mut raw = Vec::new();
        for (l, c) in terms {
            let k = self
                .index_of(&l)
                .ok_or_else(|| Error::LabelMismatch(format!("label {l} is not in the basis")))?;
            raw.push((k, c));
        }
        Ok(SparseVec::from_entries(raw))
    }

    pub fn render(&self, v: &SparseVec) -> String {
        render_combination(v.entries().iter().map(|(k, c)| (self.labels[*k].to_string(), c)))
    }
}

/// Renders `c1*l1 + c2*l2 - ...`, with `0` for the empty sum.
pub fn render_combination<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (l, c) in terms {
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&l);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A sparse matrix between labeled bases, stored by columns.
#[derive(Clone, Debug)]
pub struct LinearMap<L: Label> {
    field: Field,
    domain: Arc<LabeledBasis<L>>,
    codomain: Arc<LabeledBasis<L>>,
    columns: Vec<SparseVec>,
}

impl<L: Label> LinearMap<L> {
    pub fn new(
        field: Field,
        domain: Arc<LabeledBasis<L>>,
        codomain: Arc<LabeledBasis<L>>,
        columns: Vec<SparseVec>,
    ) -> Result<Self> {
        if columns.len() != domain.len() {
            return Err(Error::LabelMismatch(format!(
                "{} columns for a domain of size {}",
                columns.len(),
                domain.len()
            )));
        }
        for (k, c) in columns.iter().enumerate() {
            if let Some(m) = c.max_index() {
                if m >= codomain.len() {
                    return Err(Error::LabelMismatch(format!(
                        "column {} has an entry outside the codomain",
                        domain.label(k)
                    )));
                }
            }
        }
        Ok(Self { field, domain, codomain, columns })
    }

    /// Builds a map from a function giving each domain label's image as labeled terms.
    pub fn from_fn<F>(field: Field, domain: Arc<LabeledBasis<L>>, codomain: Arc<LabeledBasis<L>>, f: F) -> Result<Self>
    where
        F: Fn(&L) -> Result<Vec<(L, Scalar)>>,
    {
        let mut columns = Vec::with_capacity(domain.len());
        for l in domain.labels() {
            let image = f(l)?;
            columns.push(codomain.vector(image).map_err(|e| match e {
                Error::LabelMismatch(m) => Error::LabelMismatch(format!("image of {l}: {m}")),
                other => other,
            })?);
        }
        Self::new(field, domain, codomain, columns)
    }

    pub fn zero(field: Field, domain: Arc<LabeledBasis<L>>, codomain: Arc<LabeledBasis<L>>) -> Self {
        let columns = vec![SparseVec::zero(); domain.len()];
        Self { field, domain, codomain, columns }
    }

    pub fn identity(field: Field, basis: Arc<LabeledBasis<L>>) -> Self {
        let columns = (0..basis.len()).map(|k| SparseVec::unit(k, field)).collect();
        Self { field, domain: basis.clone(), codomain: basis, columns }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn domain(&self) -> &Arc<LabeledBasis<L>> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<LabeledBasis<L>> {
        &self.codomain
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn column(&self, k: usize) -> &SparseVec {
        &self.columns[k]
    }

    pub fn rank(&self) -> usize {
        rank_of(self.field, &self.columns)
    }

    /// Echelonized basis of the kernel, as vectors over the domain.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let k = kernel_of_columns(self.field, &self.columns);
        Subspace::span(self.field, self.domain.len(), k)
            .expect("kernel vectors lie in the domain")
            .rows()
            .to_vec()
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::span(self.field, self.domain.len(), kernel_of_columns(self.field, &self.columns))
            .expect("kernel vectors lie in the domain")
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.codomain.len(), self.columns.iter().cloned())
            .expect("columns lie in the codomain")
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        v.entries()
            .iter()
            .fold(SparseVec::zero(), |acc, (k, c)| acc.add_scaled(c, &self.columns[*k]))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap<L>) -> Result<LinearMap<L>> {
        if !inner.codomain.same_as(&self.domain) {
            return Err(Error::LabelMismatch("composition of maps with mismatched bases".into()));
        }
        let columns = inner.columns.iter().map(|c| self.apply(c)).collect();
        Ok(LinearMap { field: self.field, domain: inner.domain.clone(), codomain: self.codomain.clone(), columns })
    }

    pub fn add(&self, other: &LinearMap<L>) -> Result<LinearMap<L>> {
        self.check_parallel(other)?;
        let one = self.field.one();
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| a.add_scaled(&one, b)).collect();
        Ok(LinearMap { columns, ..self.clone() })
    }

    fn check_parallel(&self, other: &LinearMap<L>) -> Result<()> {
        if !self.domain.same_as(&other.domain) || !self.codomain.same_as(&other.codomain) {
            return Err(Error::LabelMismatch("maps have different domain or codomain".into()));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// The first domain label on which the two maps differ.
    pub fn first_difference(&self, other: &LinearMap<L>) -> Result<Option<L>> {
        self.check_parallel(other)?;
        Ok(self
            .columns
            .iter()
            .zip(&other.columns)
            .position(|(a, b)| a != b)
            .map(|k| self.domain.label(k).clone()))
    }

    pub fn equals(&self, other: &LinearMap<L>) -> Result<bool> {
        Ok(self.first_difference(other)?.is_none())
    }

    pub fn render_column(&self, k: usize) -> String {
        self.codomain.render(&self.columns[k])
    }
}

/// `dim ker(d_out) - rank(d_in)`, after checking that `d_out ∘ d_in = 0`.
pub fn homology_dims<L: Label>(d_in: &LinearMap<L>, d_out: &LinearMap<L>) -> Result<usize> {
    let comp = d_out.compose(d_in)?;
    if let Some(k) = comp.columns().iter().position(|c| !c.is_zero()) {
        return Err(Error::NonzeroComposite(format!(
            "d_out ∘ d_in is nonzero on {}",
            d_in.domain().label(k)
        )));
    }
    let kernel = d_out.domain().len() - d_out.rank();
    Ok(kernel - d_in.rank())
}

/// Intersection of subspaces of one ambient space.
pub fn intersect(field: Field, ambient_dim: usize, subspaces: &[Subspace]) -> Result<Subspace> {
    let mut acc = Subspace::full(field, ambient_dim);
    for s in subspaces {
        if s.ambient_dim() != ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspace of dimension-{} space intersected inside dimension {ambient_dim}",
                s.ambient_dim()
            )));
        }
        acc = if acc.dim() == ambient_dim { s.clone() } else { acc.intersect(s)? };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(n: usize) -> Arc<LabeledBasis<String>> {
        Arc::new(LabeledBasis::new((0..n).map(|k| format!("e{k}")).collect()).unwrap())
    }

    #[test]
    fn identity_and_zero() {
        let b = basis(3);
        let id = LinearMap::identity(Field::Rational, b.clone());
        assert_eq!(id.rank(), 3);
        assert!(id.kernel_basis().is_empty());
        let z = LinearMap::zero(Field::Rational, b.clone(), b);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().len(), 3);
    }

    #[test]
    fn unknown_label_is_rejected() {
        let b = basis(2);
        let r = LinearMap::from_fn(Field::Rational, b.clone(), b, |_| Ok(vec![("zz".to_string(), Field::Rational.one())]));
        assert!(matches!(r, Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(LabeledBasis::new(vec!["a".to_string(), "a".to_string()]).is_err());
    }

    #[test]
    fn rendering() {
        let q = Field::Rational;
        let b = basis(3);
        let v = SparseVec::from_entries(vec![(0, q.from_i64(2)), (2, q.from_i64(-1))]);
        assert_eq!(b.render(&v), "2*e0 - e2");
        assert_eq!(b.render(&SparseVec::zero()), "0");
    }
}
