use std::sync::Arc;

use crate::error::Result;
use crate::exactlin::Subspace;
use crate::simplicial::{multiply_elements, SimplicialAlgebra, SimplicialSpace, SubObject};
use crate::freealg::Element;

/// Block `(n, w)` of `P^s A`, the span of `s`-fold products, in the
/// coordinates of `A`'s block. `P^0 = P^1 = A`.
pub fn power_subspace(alg: &dyn SimplicialAlgebra, s: usize, n: usize, w: usize) -> Result<Subspace> {
    if let Some(p) = alg.power_block(s, n, w)? {
        return Ok(p);
    }
    spanned_power(alg, s, n, w)
}

/// `P^s` as the span of products `P^{s-1}_{w'} · A_{w-w'}`, ignoring any
/// direct description the algebra offers.
pub fn spanned_power(alg: &dyn SimplicialAlgebra, s: usize, n: usize, w: usize) -> Result<Subspace> {
    let field = alg.field();
    let target = alg.basis(n, w)?;
    if s <= 1 {
        return Ok(Subspace::full(field, target.len()));
    }
    let mut vecs = Vec::new();
    for w1 in 1..w {
        let lower = spanned_power(alg, s - 1, n, w1)?;
        if lower.dim() == 0 {
            continue;
        }
        let lb = alg.basis(n, w1)?;
        let rb = alg.basis(n, w - w1)?;
        for row in lower.rows() {
            let a = Element::from_terms(row.entries().iter().map(|(k, c)| (lb.label(*k).clone(), c.clone())));
            for t in rb.labels() {
                let p = multiply_elements(alg, n, &a, &Element::term(t.clone(), field))?;
                vecs.push(target.vector(p.into_vec())?);
            }
        }
    }
    Subspace::span(field, target.len(), vecs)
}

/// `P^s A` as a simplicial sub-object of `A`.
pub fn power_object(alg: Arc<dyn SimplicialAlgebra>, s: usize) -> SubObject {
    let a = alg.clone();
    let space: Arc<dyn SimplicialSpace> = alg.clone();
    SubObject::new(&format!("P^{s}({})", alg.name()), space, move |n, w| power_subspace(a.as_ref(), s, n, w))
}
