use std::sync::Arc;

use adams_tower::bar::{augmentation, verify_appendix, Bar, Indecomposables};
use adams_tower::exactlin::Field;
use adams_tower::simplicial::fixtures::{eilenberg_maclane, free_fixture};
use adams_tower::simplicial::{
    homotopy_groups, validate_algebra, validate_space, SimplicialAlgebra, SimplicialSpace, Truncation,
};

fn k1(field: Field, t: Truncation) -> Arc<dyn SimplicialAlgebra> {
    Arc::new(eilenberg_maclane(field, 1, t, "x").unwrap())
}

#[test]
fn bar_of_k1_is_valid() {
    let b = Bar::new(k1(Field::Rational, Truncation::new(3, 3))).unwrap();
    let r = validate_algebra(&b);
    assert!(r.is_valid(), "{:?}", r.violations.first());
    assert_eq!(b.basis(1, 1).unwrap().labels().iter().map(|t| t.to_string()).collect::<Vec<_>>(), vec!["{{x}}"]);
}

#[test]
fn double_bar_is_valid() {
    let b = Arc::new(Bar::new(k1(Field::Rational, Truncation::new(3, 2))).unwrap());
    let bb = Bar::new(b).unwrap();
    let r = validate_space(&bb);
    assert!(r.is_valid(), "{:?}", r.violations.first());
}

#[test]
fn augmentation_is_simplicial() {
    let x = k1(Field::Rational, Truncation::new(3, 3));
    let b = Bar::new(x.clone()).unwrap();
    for w in 1..=3 {
        for q in 1..=3 {
            let eq = augmentation(&b, q, w).unwrap();
            let eq1 = augmentation(&b, q - 1, w).unwrap();
            for i in 0..=q {
                let l = eq1.compose(&b.face(i, q, w).unwrap()).unwrap();
                let r = x.face(i, q, w).unwrap().compose(&eq).unwrap();
                assert!(l.equals(&r).unwrap());
            }
        }
    }
}

#[test]
fn weight_one_equivalence() {
    let x = k1(Field::Rational, Truncation::new(4, 2));
    let b = Bar::new(x.clone()).unwrap();
    let tb = homotopy_groups(&b, 3).unwrap();
    let tx = homotopy_groups(x.as_ref(), 3).unwrap();
    for q in 0..=3 {
        assert_eq!(tb.get(q, 1), tx.get(q, 1), "q={q}");
    }
    let kq = Indecomposables::new(Arc::new(b));
    assert!(validate_algebra(&kq).is_valid());
}

#[test]
fn appendix_k1() {
    let r = verify_appendix(k1(Field::Rational, Truncation::new(4, 2)), 3, None).unwrap();
    assert!(r.passed(), "{:?} {:?} {:?}", r.normal_form_failures.first(), r.term_failures.first(), r.homotopy.failures.first());
    let r = verify_appendix(k1(Field::Rational, Truncation::new(4, 2)), 3, Some((1, 2))).unwrap();
    assert!(!r.passed());
    println!("{:?} checked={} nf={} term={}", r.homotopy.failed_identities(), r.homotopy.checked, r.normal_form_checked, r.term_checked);
    println!("{}", r.homotopy.failures[0]);
}

#[test]
fn appendix_free() {
    let x: Arc<dyn SimplicialAlgebra> = Arc::new(free_fixture(Field::Rational, Truncation::new(3, 2)).unwrap());
    let r = verify_appendix(x, 2, None).unwrap();
    assert!(r.passed(), "{:?} {:?} {:?}", r.normal_form_failures.first(), r.term_failures.first(), r.homotopy.failures.first());
}
