//! One line per acceptance criterion; exits nonzero if any fails.

use std::sync::Arc;
use std::time::Instant;

use adams_tower::bar::{verify_appendix, DEFAULT_CAP};
use adams_tower::exactlin::Field;
use adams_tower::simplicial::fixtures::{eilenberg_maclane, free_fixture, mutated_face_fixture, sum_fixture};
use adams_tower::simplicial::{homotopy_groups, validate_algebra, SimplicialAlgebra, SimplicialSpace, Truncation};
use adams_tower::sseq::{dold_puppe_check, e0_page, power_quotient_check};
use adams_tower::tower::*;
use adams_tower::Result;

type Fixture = fn(Field, Truncation) -> Arc<dyn SimplicialAlgebra>;

fn k1(field: Field, t: Truncation) -> Arc<dyn SimplicialAlgebra> {
    Arc::new(eilenberg_maclane(field, 1, t, "x").unwrap())
}

fn free(field: Field, t: Truncation) -> Arc<dyn SimplicialAlgebra> {
    Arc::new(free_fixture(field, t).unwrap())
}

const FIXTURES: [(&str, Fixture); 2] = [("K(1)", k1), ("free", free)];

fn f2() -> Field {
    Field::prime(2).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn appendix() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    for field in [Field::Rational, f2()] {
        for (name, fx) in FIXTURES {
            let r = verify_appendix(fx(field, Truncation::new(5, 3)), 4, None)?;
            pass &= r.passed() && r.homotopy.checked > 0;
            notes.push(format!("{name}/{field}: {} equalities", r.homotopy.checked));
            if let Some(f) = r.homotopy.failures.first() {
                notes.push(f.to_string());
            }
        }
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn tower_oracle() -> Result<Outcome> {
    let mut blocks = 0;
    let mut bad = Vec::new();
    for (name, fx) in FIXTURES {
        let tower = AdamsTower::new(fx(Field::Rational, Truncation::new(3, 4)), 3, DEFAULT_CAP)?;
        for r in 0..=3 {
            for n in 0..=3 {
                for w in 1..=4 {
                    let c = tower_oracle_check(&tower, r, n, w)?;
                    blocks += 1;
                    if !c.equal {
                        bad.push(format!("{name} {c}"));
                    }
                }
            }
        }
    }
    Ok(outcome(bad.is_empty(), format!("{blocks} blocks, {} unequal {}", bad.len(), bad.join("; "))))
}

fn delta_powers() -> Result<Outcome> {
    let mut blocks = 0;
    let mut nonzero = 0;
    let mut bad = Vec::new();
    for (name, fx) in FIXTURES {
        let tower = AdamsTower::new(fx(Field::Rational, Truncation::new(3, 4)), 3, DEFAULT_CAP)?;
        for r in 1..=3 {
            for n in 0..=3 {
                for w in 1..=4 {
                    let c = delta_power_check(&tower, r, n, w)?;
                    blocks += 1;
                    nonzero += usize::from(c.image_rank > 0);
                    bad.extend(c.failures.into_iter().map(|f| format!("{name}: {f}")));
                }
            }
        }
    }
    Ok(outcome(bad.is_empty(), format!("{blocks} blocks, {nonzero} with nonzero image {}", bad.join("; "))))
}

fn dold_puppe() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    let cases = [(2, Field::Rational), (2, f2()), (3, Field::Rational), (3, f2()), (3, Field::prime(3)?)];
    for (p, field) in cases {
        let v: Arc<dyn SimplicialSpace> = Arc::new(eilenberg_maclane(field, 1, Truncation::new(p, p), "x")?);
        let r = dold_puppe_check(v, p, p - 1)?;
        pass &= r.passed();
        notes.push(format!("p={p}/{field}: {:?}", (0..p).map(|q| r.table.total(q)).collect::<Vec<_>>()));
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn connectivity() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    for (t, s) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let q_max = s - t;
        let a = k1(Field::Rational, Truncation::new(q_max + 1, 4));
        let r = connectivity_report(a, t, s, q_max, DEFAULT_CAP)?;
        pass &= r.passed();
        let dims: Vec<usize> = (0..=q_max).map(|q| r.table.total(q)).collect();
        notes.push(format!("(t,s)=({t},{s}) π_≤{q_max}={dims:?}"));
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn convergence() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, fx) in FIXTURES {
        for (field, q, n_top, w_max) in
            [(Field::Rational, 0, 1, 4), (Field::Rational, 1, 2, 4), (Field::Rational, 1, 2, 5), (f2(), 1, 2, 4)]
        {
            let tower = AdamsTower::new(fx(field, Truncation::new(n_top, w_max)), 2 * 2 + q - 1, DEFAULT_CAP)?;
            let r = convergence_check(&tower, 2, q)?;
            pass &= r.passed();
            let src: usize = r.blocks.iter().map(|b| b.source_dim).sum();
            let tgt: usize = r.blocks.iter().map(|b| b.target_dim).sum();
            notes.push(format!(
                "{name}/{field} (2,{q}) w≤{w_max}: source {src} target {tgt}{}",
                if r.vacuous() { " vacuous" } else { "" }
            ));
        }
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn twisting() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, fx) in FIXTURES {
        let tower = AdamsTower::new(fx(Field::Rational, Truncation::new(3, 4)), 3, DEFAULT_CAP)?;
        for n in 1..=3 {
            let r = twisting_check(&tower, n, 2)?;
            pass &= r.passed();
            let checked: usize = r.homotopies.iter().map(|(_, h)| h.checked).sum();
            let nontrivial = r.induced.iter().filter(|b| b.source_dim > 0).count();
            notes.push(format!(
                "{name} n={n}: {checked} homotopy equalities, π compared on {} blocks{}",
                r.induced.len(),
                if nontrivial == 0 { " (vacuous)" } else { "" }
            ));
            for (s, h) in &r.homotopies {
                if let Some(f) = h.failures.first() {
                    notes.push(format!("s={s}: {f}"));
                }
            }
        }
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn e0() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    let a = k1(Field::Rational, Truncation::new(3, 4));
    for p in 1..=3 {
        let r = power_quotient_check(a.clone(), p, 2, DEFAULT_CAP)?;
        pass &= r.passed();
        let total: usize = r.rows.iter().map(|row| row.quotient_chains).sum();
        notes.push(format!("p={p}: {} rows, Σ N_q = {total}", r.rows.len()));
    }
    for s in 2..=3 {
        let page = e0_page(a.clone(), s, 2, DEFAULT_CAP)?;
        pass &= page.passed();
        notes.push(format!("E0 s={s}: low rows zero {}, bound {}", page.low_rows_vanish(), page.bound_holds()));
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn sanity() -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    for field in [Field::Rational, f2()] {
        for n in 0..=3 {
            let k = eilenberg_maclane(field, n, Truncation::new(5, 2), "x")?;
            let t = homotopy_groups(&k, 4)?;
            pass &= (0..=4).all(|q| t.total(q) == usize::from(q == n));
        }
    }
    let sum = sum_fixture(Field::Rational, Truncation::new(4, 1))?;
    let t = homotopy_groups(&sum, 3)?;
    pass &= (0..=3).all(|q| t.total(q) == usize::from(q == 1 || q == 2));
    let bad = validate_algebra(&mutated_face_fixture(Field::Rational, Truncation::new(4, 1))?);
    let named = bad.violations.first().map(|v| v.family.clone()).unwrap_or_default();
    pass &= !bad.is_valid() && named.contains("d_i d_j");
    notes.push(format!("mutant rejected by {named}"));
    let render = || -> Result<String> {
        let tower = AdamsTower::new(free(Field::Rational, Truncation::new(2, 4)), 3, DEFAULT_CAP)?;
        let c = convergence_check(&tower, 2, 0)?;
        let pi = homotopy_groups(tower.level(1).as_ref(), 1)?;
        Ok(format!("{c}\n{pi}"))
    };
    let same = render()? == render()?;
    pass &= same;
    notes.push(format!("repeat reports identical {same}"));
    Ok(outcome(pass, notes.join("; ")))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("appendix homotopy", appendix),
        ("tower basis = kernel oracle", tower_oracle),
        ("δ^r lands in P^{r+1}", delta_powers),
        ("Dold–Puppe connectivity", dold_puppe),
        ("connectivity of D̃_t P^s", connectivity),
        ("convergence", convergence),
        ("twisting", twisting),
        ("E0 and power quotients", e0),
        ("sanity and negative tests", sanity),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
                    (o, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut failed = 0;
    for (k, ((name, _), (o, secs))) in criteria.iter().zip(&results).enumerate() {
        failed += usize::from(!o.pass);
        println!(
            "criterion {}: {} {name} (tolerance: exact, {secs:.1}s) {}",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
