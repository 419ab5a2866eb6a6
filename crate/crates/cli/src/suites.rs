//! Verification suites. Each returns one or more report sections per input.

use std::sync::Arc;

use adams_tower::bar::{verify_appendix_capped, Bar};
use adams_tower::exactlin::Field;
use adams_tower::simplicial::{
    homotopy_groups, sample_products, validate_algebra, SimplicialAlgebra, SimplicialSpace, Truncation,
    ValidationReport,
};
use adams_tower::sseq::{dold_puppe_check, e0_page, power_quotient_check};
use adams_tower::tower::{
    connectivity_report, convergence_check, delta_power_check, tower_oracle_check, twisting_check, AdamsTower,
};
use adams_tower::{Error, Result};

use crate::input::Input;
use crate::report::{Section, Verdict};
use crate::row;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Appendix,
    Tower,
    Twisting,
    Connectivity,
    Convergence,
    DoldPuppe,
    E0,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Appendix,
        Suite::Tower,
        Suite::Twisting,
        Suite::Connectivity,
        Suite::Convergence,
        Suite::DoldPuppe,
        Suite::E0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Appendix => "appendix",
            Suite::Tower => "tower",
            Suite::Twisting => "twisting",
            Suite::Connectivity => "connectivity",
            Suite::Convergence => "convergence",
            Suite::DoldPuppe => "dold-puppe",
            Suite::E0 => "e0",
            Suite::All => "all",
        }
    }

    /// Bumped whenever a suite's checks or parameters change meaning.
    pub fn version(self) -> u32 {
        1
    }

    pub fn expand(self) -> Vec<Suite> {
        if self == Suite::All {
            Suite::EACH.to_vec()
        } else {
            vec![self]
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub cap: u128,
    pub r_max: usize,
    pub t: usize,
    pub q: usize,
}

/// Errors that mean a claim failed, as opposed to bad parameters.
fn is_falsification(e: &Error) -> bool {
    matches!(
        e,
        Error::Containment(_) | Error::NotSurjective(_) | Error::NonzeroComposite(_) | Error::Naturality(_)
    )
}

/// Turns a suite error into a skipped or falsified section; anything else is
/// passed up as a usage error.
fn settle(name: String, r: Result<Vec<Section>>) -> Result<Vec<Section>> {
    match r {
        Ok(s) => Ok(s),
        Err(Error::BlockTooLarge(m)) => Ok(vec![Section::skipped(name, m)]),
        Err(e) if is_falsification(&e) => {
            let mut s = Section::new(name, &[]);
            s.mark(Verdict::Falsified);
            s.note(e.to_string());
            Ok(vec![s])
        }
        Err(e) => Err(e),
    }
}

const MAX_NOTES: usize = 50;

fn note_all<T: ToString>(s: &mut Section, items: impl IntoIterator<Item = T>) {
    let items: Vec<String> = items.into_iter().map(|t| t.to_string()).collect();
    let n = items.len();
    s.notes.extend(items.into_iter().take(MAX_NOTES));
    if n > MAX_NOTES {
        s.note(format!("{} further entries omitted", n - MAX_NOTES));
    }
}

pub fn run(suite: Suite, input: &Input, p: &Params) -> Result<Vec<Section>> {
    let x = input.alg.clone();
    let name = format!("{} {}", suite.name(), input.name);
    let r = match suite {
        Suite::Appendix => appendix(&name, x, p),
        Suite::Tower => tower(&name, x, p),
        Suite::Twisting => twisting(&name, x, p),
        Suite::Connectivity => connectivity(&name, x, p),
        Suite::Convergence => convergence(&name, x, p),
        Suite::DoldPuppe => dold_puppe(&name, x),
        Suite::E0 => e0(&name, x, p),
        Suite::All => unreachable!("expanded by the caller"),
    };
    settle(name, r)
}

fn top(x: &dyn SimplicialAlgebra) -> usize {
    x.truncation().max_degree
}

fn appendix(name: &str, x: Arc<dyn SimplicialAlgebra>, p: &Params) -> Result<Vec<Section>> {
    let q_max = top(x.as_ref()).saturating_sub(1);
    let r = verify_appendix_capped(x, q_max, None, p.cap)?;
    let mut s = Section::new(name, &["check", "count", "failures"]);
    s.push(row!["layer normal forms", r.normal_form_checked, r.normal_form_failures.len()]);
    s.push(row!["formulas on terms", r.term_checked, r.term_failures.len()]);
    s.push(row!["homotopy identities", r.homotopy.checked, r.homotopy.failures.len()]);
    s.note(format!("h_(j,q) for q <= {q_max}"));
    if !r.passed() {
        s.mark(Verdict::Falsified);
        s.note(format!("failed identities: {}", r.homotopy.failed_identities().join("; ")));
    }
    note_all(&mut s, r.normal_form_failures.iter().chain(&r.term_failures));
    note_all(&mut s, &r.homotopy.failures);
    Ok(vec![s])
}

fn tower(name: &str, x: Arc<dyn SimplicialAlgebra>, p: &Params) -> Result<Vec<Section>> {
    let n_top = top(x.as_ref());
    let weights = x.weights();
    let tower = AdamsTower::new(x, p.r_max, p.cap)?;
    let mut oracle = Section::new(format!("{name} oracle"), &["r", "n", "w", "ambient", "basis", "oracle", "equal"]);
    let mut delta = Section::new(format!("{name} delta"), &["r", "n", "w", "source", "image rank", "P^(r+1)", "ok"]);
    let mut skipped = Vec::new();
    for r in 0..=p.r_max {
        for n in 0..=n_top {
            for &w in &weights {
                match tower_oracle_check(&tower, r, n, w) {
                    Ok(c) => {
                        if !c.equal {
                            oracle.mark(Verdict::Falsified);
                        }
                        oracle.push(row![r, n, w, c.ambient_dim, c.basis_dim, c.oracle_dim, c.equal]);
                    }
                    Err(Error::BlockTooLarge(m)) => {
                        skipped.push(format!("(n={n}, w={w}, r={r}): {m}"));
                        continue;
                    }
                    Err(e) => return Err(e),
                }
                if r == 0 {
                    continue;
                }
                match delta_power_check(&tower, r, n, w) {
                    Ok(c) => {
                        if !c.passed() {
                            delta.mark(Verdict::Falsified);
                        }
                        delta.push(row![r, n, w, c.source_dim, c.image_rank, c.power_dim, c.passed()]);
                        note_all(&mut delta, c.failures);
                    }
                    Err(Error::BlockTooLarge(m)) => skipped.push(format!("delta (n={n}, w={w}, r={r}): {m}")),
                    Err(e) if is_falsification(&e) => {
                        delta.mark(Verdict::Falsified);
                        delta.note(format!("(n={n}, w={w}, r={r}): {e}"));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    if !skipped.is_empty() {
        oracle.note(format!("{} blocks skipped by the cap {}", skipped.len(), p.cap));
        note_all(&mut oracle, skipped);
    }
    Ok(vec![oracle, delta])
}

fn twisting(name: &str, x: Arc<dyn SimplicialAlgebra>, p: &Params) -> Result<Vec<Section>> {
    let q_max = top(x.as_ref()).saturating_sub(1).min(2);
    let r_max = p.r_max.min(3);
    let tower = AdamsTower::new(x, r_max, p.cap)?;
    let mut out = Vec::new();
    for n in 1..=r_max {
        let label = format!("{name} n={n}");
        let r = settle(label.clone(), (|| {
            let r = twisting_check(&tower, n, q_max)?;
            let mut h = Section::new(format!("{label} homotopy"), &["s", "equalities", "failures"]);
            for (s, rep) in &r.homotopies {
                h.push(row![*s, rep.checked, rep.failures.len()]);
                note_all(&mut h, &rep.failures);
            }
            let mut pi = Section::new(format!("{label} induced"), &["q", "w", "source", "target", "rank", "agree"]);
            for b in &r.induced {
                pi.push(row![b.q, b.w, b.source_dim, b.target_dim, b.rank, b.agree]);
            }
            if r.homotopies.iter().any(|(_, rep)| !rep.passed()) {
                h.mark(Verdict::Falsified);
            }
            if r.induced.iter().any(|b| !b.agree) {
                pi.mark(Verdict::Falsified);
            } else if r.induced.iter().all(|b| b.source_dim == 0) {
                pi.mark(Verdict::Vacuous);
                pi.note("every source group is zero");
            }
            Ok(vec![h, pi])
        })())?;
        out.extend(r);
    }
    Ok(out)
}

fn connectivity(name: &str, x: Arc<dyn SimplicialAlgebra>, p: &Params) -> Result<Vec<Section>> {
    let mut out = Vec::new();
    for (t, s) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let q_max = (s - t).min(top(x.as_ref()).saturating_sub(1));
        let label = format!("{name} t={t} s={s}");
        let r = settle(label.clone(), (|| {
            let r = connectivity_report(x.clone(), t, s, q_max, p.cap)?;
            let mut sec = Section::new(label.clone(), &["q", "w", "dim", "must vanish"]);
            for (&(q, w), &d) in &r.table.dims {
                sec.push(row![q, w, d, q + t <= s]);
            }
            if !r.passed() {
                sec.mark(Verdict::Falsified);
                note_all(&mut sec, r.falsifications.iter().map(|(q, w, d)| format!("pi_{q} weight {w} has dim {d}")));
            }
            Ok(vec![sec])
        })())?;
        out.extend(r);
    }
    Ok(out)
}

fn convergence(name: &str, x: Arc<dyn SimplicialAlgebra>, p: &Params) -> Result<Vec<Section>> {
    if p.t == 0 {
        return Err(Error::InvalidArgument("--t must be at least 1".into()));
    }
    let from = 2 * p.t + p.q - 1;
    let tower = AdamsTower::new(x, from, p.cap)?;
    let r = convergence_check(&tower, p.t, p.q)?;
    let mut s = Section::new(
        format!("{name} t={} q={}", p.t, p.q),
        &["w", "source", "target", "chain rank", "composed rank", "image ranks"],
    );
    for b in &r.blocks {
        let ranks: Vec<String> = b.image_ranks.iter().map(|k| k.to_string()).collect();
        s.push(row![b.w, b.source_dim, b.target_dim, b.chain_rank, b.composed_rank, ranks.join("/")]);
    }
    s.note(format!("pi_{}(D_{}) -> pi_{}(D_{})", p.q, r.from, p.q, p.t));
    s.note(format!("vacuous {}", if r.vacuous() { "yes" } else { "no" }));
    if !r.images_decrease() {
        s.note("image ranks increase along the tower");
    }
    if !r.passed() {
        s.mark(Verdict::Falsified);
    } else if r.vacuous() {
        s.mark(Verdict::Vacuous);
    }
    Ok(vec![s])
}

fn dold_puppe(name: &str, x: Arc<dyn SimplicialAlgebra>) -> Result<Vec<Section>> {
    let mut out = Vec::new();
    for p in 2..=3 {
        let q_max = (p - 1).min(top(x.as_ref()).saturating_sub(1));
        let v: Arc<dyn SimplicialSpace> = x.clone();
        let label = format!("{name} p={p}");
        let r = settle(label.clone(), (|| {
            let r = dold_puppe_check(v, p, q_max)?;
            let mut s = Section::new(label.clone(), &["q", "w", "dim"]);
            for (&(q, w), &d) in &r.table.dims {
                s.push(row![q, w, d]);
            }
            if !r.passed() {
                s.mark(Verdict::Falsified);
                note_all(&mut s, r.falsifications.iter().map(|(q, w, d)| format!("pi_{q} weight {w} has dim {d}")));
            }
            Ok(vec![s])
        })())?;
        out.extend(r);
    }
    Ok(out)
}

fn e0(name: &str, x: Arc<dyn SimplicialAlgebra>, p: &Params) -> Result<Vec<Section>> {
    let q_max = top(x.as_ref()).saturating_sub(1).min(2);
    let mut out = Vec::new();
    let cols = ["q", "w", "N(P^p/P^(p+1))", "N(Sym^p)", "pi quotient", "pi Sym^p", "match"];
    for k in 1..=3 {
        let label = format!("{name} quotient p={k}");
        out.extend(settle(label.clone(), (|| {
            let r = power_quotient_check(x.clone(), k, q_max, p.cap)?;
            let mut s = Section::new(label.clone(), &cols);
            for w in &r.rows {
                s.push(row![w.q, w.w, w.quotient_chains, w.coinvariant_chains, w.quotient_pi, w.coinvariant_pi, w.matches()]);
            }
            if !r.passed() {
                s.mark(Verdict::Falsified);
            }
            Ok(vec![s])
        })())?);
    }
    for s in 2..=3 {
        let label = format!("{name} page s={s}");
        out.extend(settle(label.clone(), (|| {
            let page = e0_page(x.clone(), s, q_max, p.cap)?;
            let mut sec = Section::new(label.clone(), &["p", "q", "w", "E0 dim"]);
            for (&(pp, q, w), &d) in &page.entries {
                sec.push(row![pp, q, w, d]);
            }
            for (&(q, w), &d) in &page.pi.dims {
                sec.note(format!("pi_{q} weight {w}: {d} <= {}", page.column_sum(q, w)));
            }
            sec.note(format!("rows p < {s} vanish: {}", page.low_rows_vanish()));
            if !page.passed() {
                sec.mark(Verdict::Falsified);
                note_all(&mut sec, page.unbounded.iter().map(|(p, q, w)| format!("P^{p} nonzero at q={q} w={w}")));
            }
            Ok(vec![sec])
        })())?);
    }
    Ok(out)
}

fn violations_section(name: String, r: &ValidationReport) -> Section {
    let mut s = Section::new(name, &["family", "instance", "degree", "weight", "witness"]);
    for v in &r.violations {
        s.push(row![v.family.clone(), v.instance.clone(), v.degree, v.weight, v.witness.clone()]);
    }
    if !r.is_valid() {
        s.mark(Verdict::Falsified);
        let mut fams: Vec<&str> = r.violations.iter().map(|v| v.family.as_str()).collect();
        fams.sort();
        fams.dedup();
        s.note(format!("violated: {}", fams.join("; ")));
    }
    s
}

/// Exhaustive identities on the input, then seeded sampling of products on
/// the input and on its bar construction.
pub fn validate(input: &Input, samples: usize, seed: u64, cap: u128) -> Vec<Section> {
    let x = input.alg.as_ref();
    let mut out = vec![violations_section(format!("validate {}", input.name), &validate_algebra(x))];
    let mut sampled = violations_section(format!("validate {} sampled", input.name), &sample_products(x, samples, seed));
    sampled.note(format!("{samples} random products, seed {seed}"));
    out.push(sampled);
    if x.graded() {
        if let Ok(bar) = Bar::with_cap(input.alg.clone(), cap) {
            let mut s =
                violations_section(format!("validate b({}) sampled", input.name), &sample_products(&bar, samples, seed));
            s.note(format!("{samples} random products, seed {seed}"));
            out.push(s);
        }
    }
    out
}

pub fn pi(input: &Input, q_max: usize, bar_depth: usize, cap: u128) -> Result<Section> {
    let space = Bar::iterate(input.alg.clone(), bar_depth, cap)?;
    let table = homotopy_groups(space.as_ref(), q_max)?;
    let mut s = Section::new(format!("pi {}", space.name()), &["q", "w", "dim"]);
    for (&(q, w), &d) in &table.dims {
        s.push(row![q, w, d]);
    }
    for q in table.degrees() {
        s.note(format!("pi_{q} total {}", table.total(q)));
    }
    Ok(s)
}

pub fn describe(field: Field, t: Truncation) -> (String, String) {
    (field.to_string(), format!("{} {}", t.max_degree, t.max_weight))
}
