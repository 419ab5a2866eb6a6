use super::element::Element;
use super::term::Term;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Label, LinearMap, Scalar};

/// Multiplies out a nonempty list of terms in some algebra.
pub type ProductFn<'a> = dyn Fn(&[Term]) -> Result<Element> + 'a;

/// Replaces every subterm at distance `d` by `f(subterm)`, extending
/// multilinearly through the multisets above it.
pub fn rewrite_at(t: &Term, d: usize, field: Field, f: &dyn Fn(&Term) -> Result<Element>) -> Result<Element> {
    if d == 0 {
        return f(t);
    }
    let Term::Node(children) = t else {
        return Err(Error::LayerOutOfRange(format!("term {t} has no layer at distance {d}")));
    };
    let mut images = Vec::with_capacity(children.len());
    for c in children {
        let e = rewrite_at(c, d - 1, field, f)?;
        if e.is_zero() {
            return Ok(Element::zero());
        }
        images.push(e);
    }
    Ok(combine_children(&images, field))
}

/// Linear extension of `rewrite_at`.
pub fn rewrite_element_at(e: &Element, d: usize, field: Field, f: &dyn Fn(&Term) -> Result<Element>) -> Result<Element> {
    let mut out = Element::zero();
    for (t, c) in e.iter() {
        out.add_scaled(c, &rewrite_at(t, d, field, f)?);
    }
    Ok(out)
}

/// Applies `f` to every term of `e` and sums.
pub fn apply_linear(e: &Element, f: &dyn Fn(&Term) -> Result<Element>) -> Result<Element> {
    let mut out = Element::zero();
    for (t, c) in e.iter() {
        out.add_scaled(c, &f(t)?);
    }
    Ok(out)
}

/// The multiset formed from one term of each child image, summed over all choices.
pub fn combine_children(images: &[Element], field: Field) -> Element {
    if images.iter().all(|e| e.len() == 1) {
        let mut coef = field.one();
        let mut ch = Vec::with_capacity(images.len());
        for e in images {
            let (t, c) = e.iter().next().unwrap();
            coef = &coef * c;
            ch.push(t.clone());
        }
        ch.sort();
        return Element::from_terms([(Term::node_sorted(ch), coef)]);
    }
    let mut partial: Vec<(Vec<Term>, Scalar)> = vec![(Vec::new(), field.one())];
    for e in images {
        let mut next = Vec::with_capacity(partial.len() * e.len());
        for (prefix, c) in &partial {
            for (t, x) in e.iter() {
                let mut p = prefix.clone();
                p.push(t.clone());
                next.push((p, c * x));
            }
        }
        partial = next;
    }
    Element::from_terms(partial.into_iter().map(|(mut ch, c)| {
        ch.sort();
        (Term::node_sorted(ch), c)
    }))
}

/// Product in a free layer: the union of the children's multisets.
pub fn free_product(factors: &[Term], field: Field) -> Result<Element> {
    let mut ch = Vec::new();
    for f in factors {
        match f {
            Term::Node(c) => ch.extend(c.iter().cloned()),
            Term::Leaf(g) => {
                return Err(Error::LayerOutOfRange(format!("free product applied to generator {g}")));
            }
        }
    }
    Ok(Element::term(Term::node(ch)?, field))
}

/// Counit at distance `p`: each multiset there becomes the product of its members.
pub fn counit_at(t: &Term, p: usize, field: Field, mul: &ProductFn) -> Result<Element> {
    rewrite_at(t, p, field, &|node: &Term| match node {
        Term::Leaf(g) => Err(Error::LayerOutOfRange(format!("counit at generator {g}"))),
        Term::Node(ch) if ch.len() == 1 => Ok(Element::term(ch[0].clone(), field)),
        Term::Node(ch) => mul(ch),
    })
}

/// Comultiplication at distance `p`: `{m1,…,mk}` becomes `{{m1},…,{mk}}`.
pub fn comult_at(t: &Term, p: usize, field: Field) -> Result<Element> {
    rewrite_at(t, p, field, &|node: &Term| match node {
        Term::Leaf(g) => Err(Error::LayerOutOfRange(format!("comultiplication at generator {g}"))),
        Term::Node(ch) => Ok(Element::term(Term::node_sorted(ch.iter().map(|c| c.clone().wrap(1)).collect()), field)),
    })
}

/// Free product of two elements: bilinear extension of top-layer union.
pub fn multiply(a: &Element, b: &Element, field: Field) -> Result<Element> {
    let mut out = Element::zero();
    for (s, x) in a.iter() {
        for (t, y) in b.iter() {
            if s.is_leaf() || t.is_leaf() {
                return Err(Error::LayerOutOfRange(
                    "generators multiply through the algebra's structure constants".into(),
                ));
            }
            out.add_scaled(&(x * y), &free_product(&[s.clone(), t.clone()], field)?);
        }
    }
    Ok(out)
}

fn layer_distance(x: &Element, layer: usize) -> Result<Option<usize>> {
    let Some((t, _)) = x.iter().next() else { return Ok(None) };
    let depth = t.depth();
    if layer >= depth {
        return Err(Error::LayerOutOfRange(format!("layer {layer} on a depth-{depth} term")));
    }
    Ok(Some(depth - 1 - layer))
}

/// Counit at a layer, counting layer 0 as the one adjacent to the generators.
/// `base` multiplies generators when the innermost layer is addressed.
pub fn counit_layer(x: &Element, layer: usize, base: &ProductFn, field: Field) -> Result<Element> {
    let Some(d) = layer_distance(x, layer)? else { return Ok(Element::zero()) };
    let free = |ch: &[Term]| free_product(ch, field);
    let mul: &ProductFn = if layer == 0 { base } else { &free };
    let mut out = Element::zero();
    for (t, c) in x.iter() {
        out.add_scaled(c, &counit_at(t, d, field, mul)?);
    }
    Ok(out)
}

/// Comultiplication at a layer, counting layer 0 as innermost.
pub fn comult_layer(x: &Element, layer: usize, field: Field) -> Result<Element> {
    let Some(d) = layer_distance(x, layer)? else { return Ok(Element::zero()) };
    let mut out = Element::zero();
    for (t, c) in x.iter() {
        out.add_scaled(c, &comult_at(t, d, field)?);
    }
    Ok(out)
}

/// Projection onto indecomposables: drops terms whose top multiset has two or more members.
pub fn eta_indecomposables(x: &Element) -> Element {
    x.filtered(|t| t.top_size() <= 1)
}

/// Returns `G(m) ∘ Φ_A` after checking that it equals `Φ_B ∘ F(m)`.
pub fn diagonal_operator<L: Label>(
    phi_a: &LinearMap<L>,
    phi_b: &LinearMap<L>,
    f_m: &LinearMap<L>,
    g_m: &LinearMap<L>,
) -> Result<LinearMap<L>> {
    let upper = g_m.compose(phi_a)?;
    let lower = phi_b.compose(f_m)?;
    if let Some(l) = upper.first_difference(&lower)? {
        return Err(Error::Naturality(format!("legs differ on {l}")));
    }
    Ok(upper)
}

/// The zero-square product on generators.
pub fn zero_product(_: &[Term]) -> Result<Element> {
    Ok(Element::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Generator;

    fn lookup(s: &str) -> Option<Generator> {
        Some(Generator::new(s, 1, 1))
    }

    fn t(s: &str) -> Term {
        Term::parse(s, &lookup).unwrap()
    }

    fn e(s: &str) -> Element {
        Element::term(t(s), Field::Rational)
    }

    #[test]
    fn free_multiplication() {
        let q = Field::Rational;
        assert_eq!(multiply(&e("{x}"), &e("{y}"), q).unwrap(), e("{x,y}"));
        assert_eq!(multiply(&e("{x}"), &e("{x}"), q).unwrap(), e("{x,x}"));
        let mut a = e("{x}").scaled(&q.from_i64(2));
        a.add_term(t("{y}"), q.one());
        let mut want = e("{x,x}").scaled(&q.from_i64(2));
        want.add_term(t("{x,y}"), q.one());
        assert_eq!(multiply(&a, &e("{x}"), q).unwrap(), want);
        assert!(multiply(&e("x"), &e("{x}"), q).is_err());
    }

    #[test]
    fn counit_examples() {
        let q = Field::Rational;
        assert_eq!(counit_layer(&e("{{x},{y}}"), 1, &zero_product, q).unwrap(), e("{x,y}"));
        assert!(counit_layer(&e("{x,y}"), 0, &zero_product, q).unwrap().is_zero());
        assert!(counit_layer(&e("{x,y}"), 1, &zero_product, q).is_err());
    }

    #[test]
    fn comult_examples() {
        let q = Field::Rational;
        assert_eq!(comult_layer(&e("{x,y}"), 0, q).unwrap(), e("{{x},{y}}"));
        assert_eq!(comult_layer(&e("{x}"), 0, q).unwrap(), e("{{x}}"));
    }

    #[test]
    fn eta_examples() {
        let q = Field::Rational;
        assert_eq!(eta_indecomposables(&e("{x}")), e("{x}"));
        assert!(eta_indecomposables(&e("{x,y}")).is_zero());
        let mut x = e("{x}").scaled(&q.from_i64(3));
        x.add_term(t("{x,x}"), q.from_i64(5));
        assert_eq!(eta_indecomposables(&x), e("{x}").scaled(&q.from_i64(3)));
    }
}
