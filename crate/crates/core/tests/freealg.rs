use adams_tower::exactlin::Field;
use adams_tower::freealg::*;
use proptest::prelude::*;

fn gen(s: &str) -> Generator {
    Generator::new(s, 1, 1)
}

/// Raw (unsorted) terms of exact depth `d` over `x, y, z`.
fn raw_term(d: usize) -> BoxedStrategy<Term> {
    if d == 0 {
        prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(|s| Term::Leaf(gen(s))).boxed()
    } else {
        proptest::collection::vec(raw_term(d - 1), 1..=3).prop_map(Term::Node).boxed()
    }
}

fn term(d: usize) -> BoxedStrategy<Term> {
    raw_term(d).prop_map(|t| t.canonicalize().unwrap()).boxed()
}

fn element(d: usize) -> impl Strategy<Value = Element> {
    proptest::collection::vec((term(d), -3i64..=3), 1..=3).prop_map(|ts| {
        let q = Field::Rational;
        let mut e = Element::zero();
        for (t, c) in ts {
            e.add_term(t, q.from_i64(c));
        }
        e
    })
}

fn reversed(t: &Term) -> Term {
    match t {
        Term::Leaf(_) => t.clone(),
        Term::Node(ch) => Term::Node(ch.iter().rev().map(reversed).collect()),
    }
}

/// Counit at distance `p` with the free product, by direct recursion:
/// the node there is replaced by the union of its children's members.
fn counit_reference(t: &Term, p: usize) -> Term {
    let Term::Node(ch) = t else { panic!("counit at a generator") };
    if p == 0 {
        let mut members = Vec::new();
        for c in ch {
            let Term::Node(inner) = c else { panic!("free product of generators") };
            members.extend(inner.iter().cloned());
        }
        members.sort();
        Term::Node(members)
    } else {
        let mut out: Vec<Term> = ch.iter().map(|c| counit_reference(c, p - 1)).collect();
        out.sort();
        Term::Node(out)
    }
}

fn all_canonical(e: &Element) -> bool {
    e.iter().all(|(t, _)| t.is_canonical() && t.clone().canonicalize().unwrap() == *t)
}

fn lookup(s: &str) -> Option<Generator> {
    Some(gen(s))
}

#[test]
fn canonical_examples() {
    let t = |s| Term::parse(s, &lookup).unwrap();
    let yx = Term::Node(vec![Term::Leaf(gen("y")), Term::Leaf(gen("x"))]);
    assert_eq!(yx.canonicalize().unwrap(), t("{x,y}"));
    let nested = Term::Node(vec![t("{y}"), t("{x}")]);
    assert_eq!(nested.canonicalize().unwrap(), t("{{x},{y}}"));
    assert_eq!(t("{x,y}").canonicalize().unwrap(), t("{x,y}"));
    assert!(Term::node(Vec::new()).is_err());
}

#[test]
fn depth_three_counit_example() {
    let q = Field::Rational;
    let t = Term::parse("{{{x},{y}},{{x,z}}}", &lookup).unwrap();
    for p in 0..2 {
        let got = counit_at(&t, p, q, &|ch: &[Term]| free_product(ch, q)).unwrap();
        assert_eq!(got, Element::term(counit_reference(&t, p), q), "p={p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_stable(t in raw_term(3)) {
        let c = t.clone().canonicalize().unwrap();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.clone().canonicalize().unwrap(), c.clone());
        prop_assert_eq!(reversed(&t).canonicalize().unwrap(), c.clone());
        prop_assert_eq!(c.weight(), c.leaf_count());
        prop_assert_eq!(c.depth(), 3);
    }

    #[test]
    fn multiplication_is_weight_additive_and_commutative(a in element(2), b in element(2)) {
        let q = Field::Rational;
        let ab = multiply(&a, &b, q).unwrap();
        prop_assert_eq!(&ab, &multiply(&b, &a, q).unwrap());
        prop_assert!(all_canonical(&ab));
        for (s, _) in ab.iter() {
            prop_assert!(a.iter().any(|(x, _)| b.iter().any(|(y, _)| x.weight() + y.weight() == s.weight())));
        }
        prop_assert!(eta_indecomposables(&ab).is_zero());
    }

    #[test]
    fn counit_laws((d, e) in (1usize..=3).prop_flat_map(|d| (Just(d), element(d)))) {
        let q = Field::Rational;
        for layer in 0..d {
            let up = comult_layer(&e, layer, q).unwrap();
            prop_assert!(all_canonical(&up));
            prop_assert_eq!(&counit_layer(&up, layer, &zero_product, q).unwrap(), &e);
            prop_assert_eq!(&counit_layer(&up, layer + 1, &zero_product, q).unwrap(), &e);
            // coassociativity
            let left = comult_layer(&up, layer, q).unwrap();
            let right = comult_layer(&up, layer + 1, q).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn counit_matches_reference(t in term(3)) {
        let q = Field::Rational;
        for p in 0..2 {
            let got = counit_at(&t, p, q, &|ch: &[Term]| free_product(ch, q)).unwrap();
            prop_assert_eq!(got, Element::term(counit_reference(&t, p), q));
        }
    }

    #[test]
    fn zero_square_counit_kills_decomposables(t in term(1)) {
        let q = Field::Rational;
        let e = Element::term(t.clone(), q);
        let c = counit_layer(&e, 0, &zero_product, q).unwrap();
        prop_assert_eq!(c.is_zero(), t.top_size() >= 2);
    }
}
