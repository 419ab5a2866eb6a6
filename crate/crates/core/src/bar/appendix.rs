use std::sync::Arc;

use super::fused::{apply_ops, bracket_square_checks, h_counits, layer_identities, LayerOp};
use super::{augmentation_term, collapse_block, Bar, DEFAULT_CAP};
use crate::error::Result;
use crate::exactlin::Field;
use crate::freealg::{free_product, rewrite_element_at, Element, ProductFn, Term};
use crate::simplicial::{
    check_simplicial_homotopy, term_map, HomotopyData, HomotopyReport, Map, SimplicialAlgebra, SimplicialSpace,
};

/// `h_{j,q}` on one basis term of `(b²X)_q`, landing in `(bX)_{q+1}`: the
/// counit run `𝔡_{j+1,q+2} ∘ ⋯ ∘ 𝔡_{j+1,2q+1}` followed by `s_j` of `X` on
/// the leaves. With `perturb` the first counit of the run is taken at
/// distance `j` instead.
pub fn h_term(x: &dyn SimplicialAlgebra, j: usize, q: usize, t: &Term, perturb: bool) -> Result<Element> {
    let field = x.field();
    let mut ops = h_counits(j, q);
    if perturb {
        if let Some(first) = ops.last_mut() {
            *first = LayerOp::d(j, 2 * q + 1);
        }
    }
    let e = apply_ops(&ops, t, field, &|ch| free_product(ch, field))?;
    rewrite_element_at(&e, q + 2, field, &|a: &Term| x.degeneracy_term(j, q, a))
}

/// `ε_{bX}` on `(b²X)_q`: collapses the outer block.
pub fn epsilon_outer(bbx: &Bar, q: usize, t: &Term) -> Result<Element> {
    augmentation_term(bbx, q, t)
}

/// `bε` on `(b²X)_q`: collapses the inner block with the product of `X`.
pub fn epsilon_inner(x: &dyn SimplicialAlgebra, q: usize, t: &Term) -> Result<Element> {
    collapse_block(t, q + 1, q, x.field(), &|ch: &[Term]| x.product(q, ch))
}

#[derive(Clone, Debug, Default)]
pub struct AppendixReport {
    pub object: String,
    pub field: Option<Field>,
    pub q_max: usize,
    /// Layer identities and bracket formulas compared as normal forms.
    pub normal_form_checked: usize,
    pub normal_form_failures: Vec<String>,
    /// The same formulas applied to basis terms of `b²X`.
    pub term_checked: usize,
    pub term_failures: Vec<String>,
    pub homotopy: HomotopyReport,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.normal_form_failures.is_empty() && self.term_failures.is_empty() && self.homotopy.passed()
    }
}

/// Which `(j, q)` of `h` to perturb, for negative tests.
pub type Perturbation = Option<(usize, usize)>;

/// Checks that `h` is a simplicial homotopy from `ε_{bX}` to `bε` on
/// `b²X → bX`, for `h_{j,q}` with `q ≤ q_max`, after checking the layer
/// formulas symbolically and on terms.
pub fn verify_appendix(x: Arc<dyn SimplicialAlgebra>, q_max: usize, perturb: Perturbation) -> Result<AppendixReport> {
    verify_appendix_capped(x, q_max, perturb, DEFAULT_CAP)
}

/// `verify_appendix` with an explicit per-block cap on `bX` and `b²X`.
pub fn verify_appendix_capped(
    x: Arc<dyn SimplicialAlgebra>,
    q_max: usize,
    perturb: Perturbation,
    cap: u128,
) -> Result<AppendixReport> {
    let bx = Arc::new(Bar::with_cap(x.clone(), cap)?);
    let bbx = Bar::with_cap(bx.clone(), cap)?;
    // oversized blocks surface here as errors rather than as homotopy failures
    for w in bbx.weights() {
        for q in 0..=(q_max + 1).min(bbx.truncation().max_degree) {
            bbx.basis(q, w)?;
        }
    }
    let field = x.field();
    let mut report =
        AppendixReport { object: x.name(), field: Some(field), q_max, ..AppendixReport::default() };

    for id in layer_identities(q_max) {
        report.normal_form_checked += 1;
        if !id.holds()? {
            report.normal_form_failures.push(id.to_string());
        }
    }
    for (name, ok) in bracket_square_checks(q_max)? {
        report.normal_form_checked += 1;
        if !ok {
            report.normal_form_failures.push(name);
        }
    }
    term_checks(x.as_ref(), &bbx, q_max, &mut report)?;

    let h = |j: usize, q: usize, w: usize| -> Result<Map> {
        let perturbed = perturb == Some((j, q));
        term_map(field, bbx.basis(q, w)?, bx.basis(q + 1, w)?, &|t| h_term(x.as_ref(), j, q, t, perturbed))
    };
    let f = |q: usize, w: usize| -> Result<Map> {
        term_map(field, bbx.basis(q, w)?, bx.basis(q, w)?, &|t| epsilon_outer(&bbx, q, t))
    };
    let g = |q: usize, w: usize| -> Result<Map> {
        term_map(field, bbx.basis(q, w)?, bx.basis(q, w)?, &|t| epsilon_inner(x.as_ref(), q, t))
    };
    report.homotopy =
        check_simplicial_homotopy(&HomotopyData { source: &bbx, target: bx.as_ref(), h: &h, f: &f, g: &g, q_max });
    Ok(report)
}

/// Applies both sides of the layer identities and of the bracket formulas to
/// the basis of `(b²X)_q`, and compares the nested-bar faces and
/// degeneracies with the bracket composites followed by `X`'s maps.
fn term_checks(x: &dyn SimplicialAlgebra, bbx: &Bar, q_max: usize, report: &mut AppendixReport) -> Result<()> {
    let field = x.field();
    let top = bbx.truncation().max_degree;
    for w in bbx.weights() {
        for q in 0..=q_max.min(top) {
            let basis = bbx.basis(q, w)?;
            let base = |ch: &[Term]| x.product(q, ch);
            let mut compare = |what: String, lhs: &[LayerOp], rhs: &[LayerOp], base: &ProductFn| -> Result<()> {
                for t in basis.labels() {
                    report.term_checked += 1;
                    let l = apply_ops(lhs, t, field, base);
                    let r = apply_ops(rhs, t, field, base);
                    match (l, r) {
                        (Ok(l), Ok(r)) if l == r => {}
                        (Ok(l), Ok(r)) => {
                            report.term_failures.push(format!("{what} on {t} (w={w}): {l} versus {r}"));
                            break;
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            report.term_failures.push(format!("{what} on {t} (w={w}): {e}"));
                            break;
                        }
                    }
                }
                Ok(())
            };
            for id in layer_identities(q_max).into_iter().filter(|id| id.source_len() == 2 * q + 2) {
                compare(id.to_string(), &id.lhs, &id.rhs, &base)?;
            }
            for i in 0..=q {
                // counits or comultiplications on the two blocks commute
                if q >= 1 {
                    compare(
                        format!("[𝔡_{{{i},{q}}}]²"),
                        &[LayerOp::d(q + i, 2 * q), LayerOp::d(i, 2 * q + 1)],
                        &[LayerOp::d(i, 2 * q), LayerOp::d(q + 1 + i, 2 * q + 1)],
                        &base,
                    )?;
                }
                compare(
                    format!("[𝔰_{{{i},{q}}}]²"),
                    &[LayerOp::s(q + i + 2, 2 * q + 2), LayerOp::s(i, 2 * q + 1)],
                    &[LayerOp::s(i, 2 * q + 2), LayerOp::s(q + 1 + i, 2 * q + 1)],
                    &base,
                )?;
            }
            // The nested bar's structure maps are the bracket composites.
            for i in 0..=q {
                for t in basis.labels() {
                    if q >= 1 {
                        report.term_checked += 1;
                        let nested = bbx.face_term(i, q, t)?;
                        let fused = apply_ops(&[LayerOp::d(q + i, 2 * q), LayerOp::d(i, 2 * q + 1)], t, field, &base)?;
                        let fused = rewrite_element_at(&fused, 2 * q, field, &|a: &Term| x.face_term(i, q, a))?;
                        if nested != fused {
                            report.term_failures.push(format!("d_{i} of b²X on {t} is not [𝔡_{{{i},{q}}}]² d_{i}"));
                        }
                    }
                    if q < top {
                        report.term_checked += 1;
                        let nested = bbx.degeneracy_term(i, q, t)?;
                        let fused =
                            apply_ops(&[LayerOp::s(q + i + 2, 2 * q + 2), LayerOp::s(i, 2 * q + 1)], t, field, &base)?;
                        let fused = rewrite_element_at(&fused, 2 * q + 4, field, &|a: &Term| x.degeneracy_term(i, q, a))?;
                        if nested != fused {
                            report.term_failures.push(format!("s_{i} of b²X on {t} is not [𝔰_{{{i},{q}}}]² s_{i}"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
