use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::freealg::{comult_at, counit_at, free_product, Element, ProductFn, Term};

/// One layer operation on `T^{q+1}`: `𝔡_{i,q}` (counit at distance `i`,
/// to `T^q`) or `𝔰_{i,q}` (comultiplication at distance `i`, to `T^{q+2}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerOp {
    Counit { i: usize, q: usize },
    Comult { i: usize, q: usize },
}

impl LayerOp {
    pub fn d(i: usize, q: usize) -> Self {
        LayerOp::Counit { i, q }
    }

    pub fn s(i: usize, q: usize) -> Self {
        LayerOp::Comult { i, q }
    }

    pub fn source_len(&self) -> usize {
        match *self {
            LayerOp::Counit { q, .. } | LayerOp::Comult { q, .. } => q + 1,
        }
    }

    pub fn target_len(&self) -> usize {
        match *self {
            LayerOp::Counit { q, .. } => q,
            LayerOp::Comult { q, .. } => q + 2,
        }
    }

    fn index(&self) -> usize {
        match *self {
            LayerOp::Counit { i, .. } | LayerOp::Comult { i, .. } => i,
        }
    }

    /// Target layer `p` read off the source layer this returns.
    fn source_of(&self, p: usize) -> usize {
        match *self {
            LayerOp::Counit { i, .. } => {
                if p < i {
                    p
                } else {
                    p + 1
                }
            }
            LayerOp::Comult { i, .. } => {
                if p <= i {
                    p
                } else {
                    p - 1
                }
            }
        }
    }

    /// Applies the operation to an iterated monomial. A counit whose
    /// multisets hold generators multiplies them with `base`.
    pub fn apply(&self, t: &Term, field: Field, base: &ProductFn) -> Result<Element> {
        match *self {
            LayerOp::Counit { i, .. } => counit_at(t, i, field, &|ch: &[Term]| {
                if ch[0].is_leaf() {
                    base(ch)
                } else {
                    free_product(ch, field)
                }
            }),
            LayerOp::Comult { i, .. } => comult_at(t, i, field),
        }
    }
}

impl fmt::Display for LayerOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LayerOp::Counit { i, q } => write!(f, "𝔡_{{{i},{q}}}"),
            LayerOp::Comult { i, q } => write!(f, "𝔰_{{{i},{q}}}"),
        }
    }
}

/// A composite of layer operations in normal form: a monotone map sending
/// each target layer to the source layer it comes from.
///
/// Two composites of counits and comultiplications agree for every comonad
/// exactly when these maps agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusedOperator {
    source_len: usize,
    map: Vec<usize>,
}

impl FusedOperator {
    pub fn identity(len: usize) -> Self {
        Self { source_len: len, map: (0..len).collect() }
    }

    /// The composite `ops[0] ∘ ops[1] ∘ … `, so the last entry acts first.
    pub fn compose(ops: &[LayerOp]) -> Result<Self> {
        let Some(first) = ops.last() else {
            return Err(Error::InvalidArgument("empty composite has no length".into()));
        };
        let mut out = Self::identity(first.source_len());
        for op in ops.iter().rev() {
            out = out.then(op)?;
        }
        Ok(out)
    }

    /// `op ∘ self`.
    pub fn then(&self, op: &LayerOp) -> Result<Self> {
        if op.source_len() != self.target_len() || op.index() > op.source_len() - 1 {
            return Err(Error::LayerOutOfRange(format!(
                "{op} cannot follow an operator with {} layers",
                self.target_len()
            )));
        }
        let map = (0..op.target_len()).map(|p| self.map[op.source_of(p)]).collect();
        Ok(Self { source_len: self.source_len, map })
    }

    /// `self` on the outer block of layers and `inner` on the inner block.
    pub fn juxtapose(&self, inner: &FusedOperator) -> Self {
        let mut map = self.map.clone();
        map.extend(inner.map.iter().map(|p| p + self.source_len));
        Self { source_len: self.source_len + inner.source_len, map }
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn target_len(&self) -> usize {
        self.map.len()
    }

    pub fn positions(&self) -> &[usize] {
        &self.map
    }
}

/// Applies `ops[0] ∘ ops[1] ∘ …` to a term, last entry first.
pub fn apply_ops(ops: &[LayerOp], t: &Term, field: Field, base: &ProductFn) -> Result<Element> {
    let mut e = Element::term(t.clone(), field);
    for op in ops.iter().rev() {
        let mut next = Element::zero();
        for (u, c) in e.iter() {
            next.add_scaled(c, &op.apply(u, field, base)?);
        }
        e = next;
    }
    Ok(e)
}

/// One instance of a layer identity; each side is a written composite, last entry acting first.
#[derive(Clone, Debug)]
pub struct LayerIdentity {
    pub family: &'static str,
    pub i: usize,
    pub j: usize,
    pub q: usize,
    pub lhs: Vec<LayerOp>,
    pub rhs: Vec<LayerOp>,
}

impl LayerIdentity {
    pub fn holds(&self) -> Result<bool> {
        Ok(FusedOperator::compose(&self.lhs)? == FusedOperator::compose(&self.rhs)?)
    }

    /// Layer length of the source: both sides act on `T^{2q+2}`.
    pub fn source_len(&self) -> usize {
        self.lhs.last().map(LayerOp::source_len).unwrap_or(0)
    }
}

impl fmt::Display for LayerIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |ops: &[LayerOp]| ops.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("∘");
        write!(f, "{} (i={}, j={}, q={}): {} = {}", self.family, self.i, self.j, self.q, show(&self.lhs), show(&self.rhs))
    }
}

/// `𝔡_{a,p} ∘ 𝔡_{a,p+1} ∘ ⋯ ∘ 𝔡_{a,p+k-1}`.
fn counit_run(a: usize, p: usize, k: usize) -> Vec<LayerOp> {
    (p..p + k).map(|m| LayerOp::d(a, m)).collect()
}

/// The run of counits inside `h_{j,q}`: `𝔡_{j+1,q+2} ∘ ⋯ ∘ 𝔡_{j+1,2q+1}`.
pub fn h_counits(j: usize, q: usize) -> Vec<LayerOp> {
    counit_run(j + 1, q + 2, q)
}

pub const LAYER_1: &str = "(1b)";
pub const LAYER_2: &str = "(2b)";
pub const LAYER_3: &str = "(3b)";
pub const LAYER_4: &str = "(4b)";
pub const LAYER_5: &str = "(5b)";

/// The layer halves of identities (1)–(5) for `h`, for every index in range
/// with `q ≤ q_max`.
pub fn layer_identities(q_max: usize) -> Vec<LayerIdentity> {
    let mut out = Vec::new();
    let with = |mut head: Vec<LayerOp>, tail: Vec<LayerOp>| {
        head.extend(tail);
        head
    };
    for q in 0..=q_max {
        for j in 0..=q {
            // (1) d_i h_j = h_{j-1} d_i, i < j
            for i in 0..j {
                let lhs = with(vec![LayerOp::d(i, q + 1)], h_counits(j, q));
                let rhs = with(counit_run(j, q + 1, q - 1), vec![LayerOp::d(q + i, 2 * q), LayerOp::d(i, 2 * q + 1)]);
                out.push(LayerIdentity { family: LAYER_1, i, j, q, lhs, rhs });
            }
            // (2) d_{j+1} h_j = d_{j+1} h_{j+1}, j ≤ q-1
            if j < q {
                let lhs = with(vec![LayerOp::d(j + 1, q + 1)], h_counits(j, q));
                let rhs = with(vec![LayerOp::d(j + 1, q + 1)], h_counits(j + 1, q));
                out.push(LayerIdentity { family: LAYER_2, i: j + 1, j, q, lhs, rhs });
            }
            // (3) d_i h_j = h_j d_{i-1}, j < i-1 ≤ q
            if j < q {
                for i in j + 2..=q + 1 {
                    let lhs = with(vec![LayerOp::d(i, q + 1)], h_counits(j, q));
                    let rhs = with(
                        counit_run(j + 1, q + 1, q - 1),
                        vec![LayerOp::d(q + i - 1, 2 * q), LayerOp::d(i - 1, 2 * q + 1)],
                    );
                    out.push(LayerIdentity { family: LAYER_3, i, j, q, lhs, rhs });
                }
            }
            // (4) s_i h_j = h_{j+1} s_i, i ≤ j
            for i in 0..=j {
                let lhs = with(vec![LayerOp::s(i, q + 1)], h_counits(j, q));
                let rhs = with(
                    counit_run(j + 2, q + 3, q + 1),
                    vec![LayerOp::s(q + i + 2, 2 * q + 2), LayerOp::s(i, 2 * q + 1)],
                );
                out.push(LayerIdentity { family: LAYER_4, i, j, q, lhs, rhs });
            }
            // (5) s_i h_j = h_j s_{i-1}, j < i ≤ q+1
            for i in j + 1..=q + 1 {
                let lhs = with(vec![LayerOp::s(i, q + 1)], h_counits(j, q));
                let rhs = with(
                    counit_run(j + 1, q + 3, q + 1),
                    vec![LayerOp::s(q + i + 1, 2 * q + 2), LayerOp::s(i - 1, 2 * q + 1)],
                );
                out.push(LayerIdentity { family: LAYER_5, i, j, q, lhs, rhs });
            }
        }
    }
    out
}

/// `[𝔡_{i,q}]² = [𝔡_{q+i,2q} ∘ 𝔡_{i,2q+1}]` and
/// `[𝔰_{i,q}]² = [𝔰_{q+i+2,2q+2} ∘ 𝔰_{i,2q+1}]`: the operator applied to both
/// blocks of `T^{q+1}T^{q+1}` against the stated composite.
pub fn bracket_square_checks(q_max: usize) -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    for q in 0..=q_max {
        for i in 0..=q {
            let d = FusedOperator::compose(&[LayerOp::d(i, q)])?;
            let lhs = d.juxtapose(&d);
            let rhs = FusedOperator::compose(&[LayerOp::d(q + i, 2 * q), LayerOp::d(i, 2 * q + 1)])?;
            out.push((format!("[𝔡_{{{i},{q}}}]²"), lhs == rhs));
            let s = FusedOperator::compose(&[LayerOp::s(i, q)])?;
            let lhs = s.juxtapose(&s);
            let rhs = FusedOperator::compose(&[LayerOp::s(q + i + 2, 2 * q + 2), LayerOp::s(i, 2 * q + 1)])?;
            out.push((format!("[𝔰_{{{i},{q}}}]²"), lhs == rhs));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counit_laws() {
        for q in 0..4 {
            for i in 0..=q {
                let s = LayerOp::s(i, q);
                let id = FusedOperator::identity(q + 1);
                assert_eq!(FusedOperator::compose(&[LayerOp::d(i, q + 1), s]).unwrap(), id);
                assert_eq!(FusedOperator::compose(&[LayerOp::d(i + 1, q + 1), s]).unwrap(), id);
            }
        }
    }

    #[test]
    fn length_mismatch_is_refused() {
        assert!(FusedOperator::compose(&[LayerOp::d(0, 3), LayerOp::d(0, 1)]).is_err());
        assert!(FusedOperator::compose(&[LayerOp::d(4, 3)]).is_err());
    }

    #[test]
    fn bracket_squares_hold() {
        for (name, ok) in bracket_square_checks(4).unwrap() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn layer_identities_hold() {
        for id in layer_identities(4) {
            assert!(id.holds().unwrap(), "{id}");
        }
    }

    #[test]
    fn perturbed_run_breaks_the_boundary_run() {
        let mut ops = h_counits(1, 2);
        let good = FusedOperator::compose(&ops).unwrap();
        *ops.last_mut().unwrap() = LayerOp::d(1, 5);
        assert_ne!(FusedOperator::compose(&ops).unwrap(), good);
    }
}
