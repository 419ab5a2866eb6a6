use std::sync::Arc;

use adams_tower::bar::DEFAULT_CAP;
use adams_tower::exactlin::Field;
use adams_tower::simplicial::fixtures::eilenberg_maclane;
use adams_tower::simplicial::{validate_space, SimplicialAlgebra, SimplicialSpace, Truncation};
use adams_tower::sseq::*;

fn km(field: Field, m: usize, t: Truncation) -> Arc<dyn SimplicialAlgebra> {
    Arc::new(eilenberg_maclane(field, m, t, "x").unwrap())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn orbit_counts() {
    let v: Arc<dyn SimplicialSpace> = km(Field::Rational, 1, Truncation::new(4, 3));
    let one = SymPower::new(v.clone(), 1).unwrap();
    for n in 0..=4 {
        assert_eq!(one.basis(n, 1).unwrap().len(), v.basis(n, 1).unwrap().len());
        let d = v.basis(n, 1).unwrap().len();
        for p in 2..=3 {
            let sym = SymPower::new(v.clone(), p).unwrap();
            let expected = if d == 0 { 0 } else { binomial(d + p - 1, p) };
            assert_eq!(sym.basis(n, p).unwrap().len(), expected, "n={n} p={p}");
            // every generator has weight one
            assert!(sym.basis(n, p - 1).unwrap().is_empty());
        }
    }
    let two = SymPower::new(v, 2).unwrap();
    assert_eq!(two.basis(1, 2).unwrap().labels()[0].to_string(), "{x,x}");
}

#[test]
fn coinvariants_are_simplicial() {
    for field in [Field::Rational, Field::prime(3).unwrap()] {
        let v: Arc<dyn SimplicialSpace> = km(field, 1, Truncation::new(3, 3));
        for p in 1..=3 {
            let r = validate_space(&SymPower::new(v.clone(), p).unwrap());
            assert!(r.is_valid(), "{:?}", r.violations.first());
        }
    }
}

#[test]
fn dold_puppe_small() {
    for field in [Field::Rational, Field::prime(2).unwrap()] {
        let r = dold_puppe_check(km(field, 1, Truncation::new(3, 2)), 2, 2).unwrap();
        assert!(r.passed(), "{:?}", r.falsifications);
        assert_eq!(r.table.total(0) + r.table.total(1), 0);
    }
    let r = dold_puppe_check(km(Field::Rational, 2, Truncation::new(4, 2)), 2, 3).unwrap();
    assert!(r.passed(), "{:?}", r.falsifications);
}

#[test]
fn quotient_tables_agree() {
    let a = km(Field::Rational, 1, Truncation::new(3, 3));
    for p in 1..=2 {
        let r = power_quotient_check(a.clone(), p, 2, DEFAULT_CAP).unwrap();
        assert!(r.passed(), "{:?}", r.rows.iter().find(|row| !row.matches()));
        assert!(r.rows.iter().any(|row| row.quotient_chains > 0));
    }
}

#[test]
fn e0_small() {
    let page = e0_page(km(Field::Rational, 1, Truncation::new(3, 3)), 2, 2, DEFAULT_CAP).unwrap();
    assert!(page.low_rows_vanish());
    assert!(page.bound_holds(), "{page}");
    assert!(page.unbounded.is_empty());
    assert_eq!(page.get(1, 1, 2), 0);
}
