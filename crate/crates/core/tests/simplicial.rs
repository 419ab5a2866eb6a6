use std::sync::Arc;

use adams_tower::bar::Bar;
use adams_tower::exactlin::{homology_dims, Field, LinearMap, SparseVec};
use adams_tower::simplicial::fixtures::*;
use adams_tower::simplicial::schema::{export_algebra, parse_algebra};
use adams_tower::simplicial::*;

fn fields() -> [Field; 3] {
    [Field::Rational, Field::prime(2).unwrap(), Field::prime(3).unwrap()]
}

fn all_fixtures(field: Field, t: Truncation) -> Vec<ExplicitAlgebra> {
    let mut v: Vec<ExplicitAlgebra> = (0..=3).map(|n| eilenberg_maclane(field, n, t, "x").unwrap()).collect();
    v.push(free_fixture(field, t).unwrap());
    v.push(two_generator_fixture(field, t).unwrap());
    v.push(sum_fixture(field, t).unwrap());
    v
}

/// `π_q` from the unnormalized complex with `∂ = Σ (-1)^i d_i`.
fn unnormalized_pi(space: &dyn SimplicialSpace, q: usize, w: usize) -> usize {
    let field = space.field();
    let boundary = |n: usize| -> Map {
        let src = space.basis(n, w).unwrap();
        if n == 0 {
            return LinearMap::zero(field, src, Arc::new(Basis::empty()));
        }
        let tgt = space.basis(n - 1, w).unwrap();
        let mut cols = vec![SparseVec::zero(); src.len()];
        for i in 0..=n {
            let d = space.face(i, n, w).unwrap();
            let sign = field.from_i64(if i % 2 == 0 { 1 } else { -1 });
            for (k, c) in cols.iter_mut().enumerate() {
                *c = c.add_scaled(&sign, d.column(k));
            }
        }
        LinearMap::new(field, src, tgt, cols).unwrap()
    };
    homology_dims(&boundary(q + 1), &boundary(q)).unwrap()
}

#[test]
fn fixtures_validate() {
    for field in fields() {
        for x in all_fixtures(field, Truncation::new(3, 3)) {
            let r = validate_algebra(&x);
            assert!(r.is_valid(), "{}: {}", x.name(), r.violations[0]);
        }
    }
}

#[test]
fn zero_object_is_valid() {
    let z = parse_algebra("zero", "field q\ntruncation 2 2\n").unwrap();
    assert!(validate_algebra(&z).is_valid());
    assert!(homotopy_groups(&z, 1).unwrap().dims.values().all(|&d| d == 0));
}

#[test]
fn mutant_names_face_face() {
    let r = validate_algebra(&mutated_face_fixture(Field::Rational, Truncation::new(4, 1)).unwrap());
    assert!(!r.is_valid());
    assert!(r.violations.iter().any(|v| v.family == FACE_FACE), "{:?}", r.violations);
}

#[test]
fn dold_kan() {
    for field in fields() {
        for n in 0..=3 {
            let k = eilenberg_maclane(field, n, Truncation::new(5, 2), "x").unwrap();
            let t = homotopy_groups(&k, 4).unwrap();
            for q in 0..=4 {
                assert_eq!(t.get(q, 1), usize::from(q == n), "K({n}) over {field}, q={q}");
                assert_eq!(t.get(q, 2), 0);
            }
        }
    }
}

#[test]
fn normalized_and_unnormalized_agree() {
    for field in [Field::Rational, Field::prime(2).unwrap()] {
        let t = Truncation::new(4, 3);
        let mut spaces: Vec<Arc<dyn SimplicialSpace>> =
            all_fixtures(field, t).into_iter().map(|x| Arc::new(x) as Arc<dyn SimplicialSpace>).collect();
        spaces.push(Arc::new(Bar::new(Arc::new(eilenberg_maclane(field, 1, Truncation::new(3, 2), "x").unwrap())).unwrap()));
        for s in spaces {
            let top = s.truncation().max_degree;
            for q in 0..top {
                for w in s.weights() {
                    assert_eq!(homotopy_dim(s.as_ref(), q, w).unwrap(), unnormalized_pi(s.as_ref(), q, w), "{} q={q} w={w}", s.name());
                }
            }
        }
    }
}

#[test]
fn moore_differential_squares_to_zero() {
    let x = free_fixture(Field::Rational, Truncation::new(4, 3)).unwrap();
    for w in x.weights() {
        for q in 2..=4 {
            let upper = moore_chains(&x, q, w).unwrap();
            let lower = moore_chains(&x, q - 1, w).unwrap();
            let d0 = x.face(0, q, w).unwrap();
            let d0_low = x.face(0, q - 1, w).unwrap();
            for v in upper.rows() {
                let image = d0.apply(v);
                assert!(lower.contains(&image));
                assert!(d0_low.apply(&image).is_zero());
            }
        }
    }
}

#[test]
fn connectivity() {
    let t = Truncation::new(3, 2);
    assert!(is_connected(&eilenberg_maclane(Field::Rational, 1, t, "x").unwrap()).unwrap());
    assert!(!is_connected(&eilenberg_maclane(Field::Rational, 0, t, "x").unwrap()).unwrap());
    assert!(is_connected(&free_fixture(Field::Rational, t).unwrap()).unwrap());
}

#[test]
fn sum_is_additive() {
    let t = Truncation::new(4, 1);
    let k = |n| homotopy_groups(&eilenberg_maclane(Field::Rational, n, t, "x").unwrap(), 3).unwrap();
    let s = homotopy_groups(&sum_fixture(Field::Rational, t).unwrap(), 3).unwrap();
    let (k1, k2) = (k(1), k(2));
    for q in 0..=3 {
        assert_eq!(s.total(q), k1.total(q) + k2.total(q));
    }
}

#[test]
fn schema_round_trip_preserves_everything() {
    for x in all_fixtures(Field::prime(3).unwrap(), Truncation::new(3, 2)) {
        let text = export_algebra(&x).unwrap();
        let y = parse_algebra(&x.name(), &text).unwrap();
        assert!(validate_algebra(&y).is_valid());
        assert_eq!(export_algebra(&y).unwrap(), text);
        assert_eq!(homotopy_groups(&x, 2).unwrap(), homotopy_groups(&y, 2).unwrap());
    }
}

#[test]
fn zero_homotopy_between_zero_maps() {
    let x = eilenberg_maclane(Field::Rational, 1, Truncation::new(3, 1), "x").unwrap();
    let zero = |q: usize, w: usize| -> adams_tower::Result<Map> {
        Ok(LinearMap::zero(x.field(), x.basis(q, w)?, x.basis(q, w)?))
    };
    let h = |_j: usize, q: usize, w: usize| -> adams_tower::Result<Map> {
        Ok(LinearMap::zero(x.field(), x.basis(q, w)?, x.basis(q + 1, w)?))
    };
    let r = check_simplicial_homotopy(&HomotopyData { source: &x, target: &x, h: &h, f: &zero, g: &zero, q_max: 2 });
    assert!(r.passed());
    assert!(r.checked > 0);
}

#[test]
fn sampled_products_on_bars() {
    let k1 = Arc::new(eilenberg_maclane(Field::Rational, 1, Truncation::new(3, 4), "x").unwrap());
    let free = Arc::new(free_fixture(Field::prime(2).unwrap(), Truncation::new(3, 4)).unwrap());
    for x in [k1 as Arc<dyn SimplicialAlgebra>, free] {
        let bar = Bar::new(x).unwrap();
        let a = sample_products(&bar, 40, 5);
        assert!(a.is_valid(), "{}", a.violations[0]);
        assert_eq!(a, sample_products(&bar, 40, 5));
    }
}

#[test]
fn sampling_finds_a_broken_product() {
    // s0x·s0x is missing, so d_0 is not multiplicative on it
    let text = "field q\ntruncation 2 2\ngen 1 x 1\ngen 1 y 2\ngen 2 s0x 1\ngen 2 s1x 1\n\
                degen 0 1 x = s0x\ndegen 1 1 x = s1x\n\
                face 0 2 s0x = x\nface 1 2 s0x = x\nface 1 2 s1x = x\nface 2 2 s1x = x\n\
                mul 1 x x = y\n";
    let bad = parse_algebra("bad", text).unwrap();
    let r = sample_products(&bad, 200, 1);
    assert!(r.violations.iter().any(|v| v.family == FACE_MULT), "{:?}", r.violations);
}
