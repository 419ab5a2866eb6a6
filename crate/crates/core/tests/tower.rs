use std::sync::Arc;

use adams_tower::bar::{Bar, DEFAULT_CAP};
use adams_tower::exactlin::Field;
use adams_tower::simplicial::fixtures::{eilenberg_maclane, free_fixture};
use adams_tower::simplicial::{validate_space, SimplicialAlgebra, Truncation};
use adams_tower::tower::*;

fn k1(field: Field, t: Truncation) -> Arc<dyn SimplicialAlgebra> {
    Arc::new(eilenberg_maclane(field, 1, t, "x").unwrap())
}

fn free(field: Field, t: Truncation) -> Arc<dyn SimplicialAlgebra> {
    Arc::new(free_fixture(field, t).unwrap())
}

#[test]
fn small_tower_bases() {
    let tower = AdamsTower::new(k1(Field::Rational, Truncation::new(2, 3)), 2, DEFAULT_CAP).unwrap();
    assert!(tower.tower_basis(1, 0, 2).unwrap().is_empty());
    let b = tower.tower_basis(1, 1, 2).unwrap();
    assert_eq!(b.iter().map(|t| t.to_string()).collect::<Vec<_>>(), vec!["{{x},{x}}"]);
    // r = 0 is the whole algebra
    for n in 0..=2 {
        for w in 1..=3 {
            let full = tower.ambient(0).basis(n, w).unwrap().len();
            assert_eq!(tower.tower_basis(0, n, w).unwrap().len(), full);
            assert_eq!(tower.kernel_oracle(0, n, w).unwrap().dim(), full);
        }
    }
}

#[test]
fn basis_matches_kernel_oracle() {
    for x in [k1(Field::Rational, Truncation::new(2, 3)), free(Field::prime(2).unwrap(), Truncation::new(2, 3))] {
        let tower = AdamsTower::new(x, 2, DEFAULT_CAP).unwrap();
        for r in 1..=2 {
            for n in 0..=2 {
                for w in 1..=3 {
                    let c = tower_oracle_check(&tower, r, n, w).unwrap();
                    assert!(c.equal, "{c}");
                    if r == 1 {
                        assert_eq!(c.basis_dim, c.oracle_dim);
                    }
                }
            }
        }
    }
}

#[test]
fn levels_are_simplicial_and_closed_under_products() {
    let tower = AdamsTower::new(free(Field::Rational, Truncation::new(2, 4)), 2, DEFAULT_CAP).unwrap();
    for r in 0..=2 {
        let report = validate_space(tower.level(r).as_ref());
        assert!(report.is_valid(), "{:?}", report.violations.first());
        for n in 0..=2 {
            let failures = product_closure_check(&tower, r, n, 4).unwrap();
            assert!(failures.is_empty(), "{:?}", failures.first());
        }
    }
}

#[test]
fn delta_lands_in_powers() {
    for x in [k1(Field::Rational, Truncation::new(2, 4)), free(Field::Rational, Truncation::new(2, 4))] {
        let zero_square = x.name().starts_with('K');
        let tower = AdamsTower::new(x, 2, DEFAULT_CAP).unwrap();
        for r in 1..=2 {
            for n in 0..=2 {
                for w in 1..=4 {
                    let c = delta_power_check(&tower, r, n, w).unwrap();
                    assert!(c.passed(), "{:?}", c.failures.first());
                    if zero_square {
                        assert_eq!(c.image_rank, 0);
                    }
                }
            }
        }
    }
}

#[test]
fn delta_on_free_fixture_is_nonzero() {
    let tower = AdamsTower::new(free(Field::Rational, Truncation::new(2, 3)), 1, DEFAULT_CAP).unwrap();
    let c = delta_power_check(&tower, 1, 1, 2).unwrap();
    assert!(c.passed());
    assert!(c.image_rank > 0, "ε restricted to decomposables should hit the square of the generator");
}

#[test]
fn derived_power_base_case_is_power_of_bar() {
    let a = k1(Field::Rational, Truncation::new(2, 4));
    let ba: Arc<dyn SimplicialAlgebra> = Arc::new(Bar::new(a.clone()).unwrap());
    for s in 2..=3 {
        let d = Derived::new(a.clone(), BaseFunctor::Power(s), 1, DEFAULT_CAP, true).unwrap();
        for n in 0..=2 {
            for w in 1..=4 {
                let p = power_subspace(ba.as_ref(), s, n, w).unwrap();
                assert!(d.block(n, w).unwrap().same_span(&p));
                assert!(p.same_span(&spanned_power(ba.as_ref(), s, n, w).unwrap()));
            }
        }
    }
}

#[test]
fn derived_power_matches_unrolled_kernels() {
    let a = k1(Field::Rational, Truncation::new(2, 4));
    for (t, s) in [(2, 2), (2, 3), (3, 2)] {
        let d = Derived::new(a.clone(), BaseFunctor::Power(s), t, DEFAULT_CAP, true).unwrap();
        for n in 0..=2 {
            for w in 1..=4 {
                assert!(derived_power_oracle_check(&d, t, s, n, w).unwrap(), "t={t} s={s} n={n} w={w}");
            }
        }
    }
}

#[test]
fn recursive_tower_equals_monomial_tower() {
    let x = free(Field::Rational, Truncation::new(2, 4));
    let tower = AdamsTower::new(x, 3, DEFAULT_CAP).unwrap();
    for n in 0..=2 {
        for w in 1..=4 {
            for s in 1..=2 {
                assert!(recursive_level_check(&tower, BaseFunctor::Identity, s, n, w, DEFAULT_CAP).unwrap());
            }
            // D̃_1(D̃_1) and D̃_2(D̃_1) against D̃_2 and D̃_3
            assert!(recursive_level_check(&tower, BaseFunctor::Tower(1), 1, n, w, DEFAULT_CAP).unwrap());
            assert!(recursive_level_check(&tower, BaseFunctor::Tower(1), 2, n, w, DEFAULT_CAP).unwrap());
            assert!(recursive_level_check(&tower, BaseFunctor::Tower(2), 1, n, w, DEFAULT_CAP).unwrap());
        }
    }
}

#[test]
fn connectivity_small() {
    let a = k1(Field::Rational, Truncation::new(3, 3));
    let r = connectivity_report(a, 1, 2, 2, DEFAULT_CAP).unwrap();
    assert!(r.passed(), "{:?}", r.falsifications);
    assert_eq!(r.table.total(0) + r.table.total(1), 0);
}

#[test]
fn twisting_n2() {
    let tower = AdamsTower::new(k1(Field::Rational, Truncation::new(3, 3)), 2, DEFAULT_CAP).unwrap();
    let r = twisting_check(&tower, 2, 2).unwrap();
    for (s, h) in &r.homotopies {
        assert!(h.passed(), "s={s}: {}", h.failures[0]);
        assert!(h.checked > 0);
    }
    assert!(r.induced.iter().all(|b| b.agree));
    let trivial = twisting_check(&tower, 1, 2).unwrap();
    assert!(trivial.homotopies.is_empty() && trivial.passed());
}

#[test]
fn convergence_reports_vacuity() {
    let tower = AdamsTower::new(k1(Field::Rational, Truncation::new(2, 3)), 3, DEFAULT_CAP).unwrap();
    let r = convergence_check(&tower, 2, 0).unwrap();
    assert!(r.passed());
    // connected input: π_0 vanishes at every level
    assert!(r.vacuous());
    assert!(convergence_check(&tower, 2, 1).is_err());
}
