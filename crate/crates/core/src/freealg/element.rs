use std::collections::BTreeMap;
use std::fmt;

use super::term::Term;
use crate::exactlin::{render_combination, Field, Scalar};

/// A finite linear combination of terms with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Term, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(t: Term, field: Field) -> Self {
        let mut e = Self::zero();
        e.add_term(t, field.one());
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Term, Scalar)>) -> Self {
        let mut e = Self::zero();
        for (t, c) in terms {
            e.add_term(t, c);
        }
        e
    }

    pub fn add_term(&mut self, t: Term, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(acc) => {
                let s = &*acc + &c;
                if s.is_zero() {
                    self.terms.remove(&t);
                } else {
                    *acc = s;
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Element) {
        for (t, x) in &other.terms {
            self.add_term(t.clone(), c * x);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        Element::from_terms(self.terms.iter().map(|(t, x)| (t.clone(), x * c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_vec(self) -> Vec<(Term, Scalar)> {
        self.terms.into_iter().collect()
    }

    pub fn coefficient(&self, t: &Term) -> Option<&Scalar> {
        self.terms.get(t)
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filtered(&self, keep: impl Fn(&Term) -> bool) -> Element {
        Element { terms: self.terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (t.clone(), c.clone())).collect() }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_combination(self.terms.iter().map(|(t, c)| (t.to_string(), c))))
    }
}
